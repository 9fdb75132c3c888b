#include "latop/cli/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace latop::cli {

namespace {

class PbmReader {
 public:
  explicit PbmReader(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '#') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int dimension(const char* what) {
    const std::string t = token();
    if (t.empty()) error(std::string("missing ") + what);
    int v = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) error(std::string("invalid ") + what + " '" + t + "'");
      v = v * 10 + (c - '0');
      if (v > (1 << 20)) error(std::string(what) + " too large");
    }
    if (v <= 0) error(std::string(what) + " must be positive");
    return v;
  }

  bool bit() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of pixel data");
    const char c = text_[pos_++];
    if (c != '0' && c != '1') error(std::string("invalid pixel token '") + c + "'");
    return c == '1';
  }

  void finish() {
    skip_space();
    if (pos_ != text_.size()) error("trailing data after pixels");
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, "PBM line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

BinaryImage parse_pbm(std::string_view text, Boundary boundary) {
  PbmReader r(text);
  const std::string magic = r.token();
  if (magic != "P1") {
    r.error(magic == "P4" ? "raw PBM (P4) is not supported; use plain P1" : "expected magic 'P1'");
  }
  const int width = r.dimension("width");
  const int height = r.dimension("height");
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (auto& p : pixels) p = r.bit() ? 1 : 0;
  r.finish();
  return BinaryImage(height, width, std::move(pixels), boundary);
}

BinaryImage read_pbm(const std::filesystem::path& path, Boundary boundary) {
  try {
    return parse_pbm(read_text_file(path), boundary);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

std::string format_pbm(const BinaryImage& image) {
  // Plain PBM lines should stay within 70 characters.
  constexpr int kPerLine = 35;
  std::string out = "P1\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n";
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      out += image.get(r, c) ? '1' : '0';
      const bool line_end = c + 1 == image.width() || (c + 1) % kPerLine == 0;
      out += line_end ? '\n' : ' ';
    }
  }
  return out;
}

void write_pbm(const BinaryImage& image, const std::filesystem::path& path) {
  write_text_file(path, format_pbm(image));
}

Manifest parse_manifest(std::string_view text, const std::filesystem::path& base) {
  Manifest m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      fail(ErrorKind::Parse, "manifest line " + std::to_string(no) + ": expected 'input<TAB>target'");
    }
    std::filesystem::path in_path = line.substr(0, tab);
    std::filesystem::path out_path = line.substr(tab + 1);
    if (in_path.empty() || out_path.empty()) {
      fail(ErrorKind::Parse, "manifest line " + std::to_string(no) + ": empty path");
    }
    if (in_path.is_relative()) in_path = base / in_path;
    if (out_path.is_relative()) out_path = base / out_path;
    m.pairs.emplace_back(std::move(in_path), std::move(out_path));
  }
  if (m.pairs.empty()) fail(ErrorKind::Parse, "manifest lists no pairs");
  return m;
}

Manifest read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_text_file(path), path.parent_path());
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  const auto base = path.parent_path();
  std::string out;
  for (const auto& [in, tgt] : m.pairs) {
    out += std::filesystem::relative(in, base).generic_string() + "\t" +
           std::filesystem::relative(tgt, base).generic_string() + "\n";
  }
  write_text_file(path, out);
}

Dataset load_dataset(const Manifest& m, Boundary boundary) {
  std::vector<SamplePair> pairs;
  for (const auto& [in, tgt] : m.pairs) {
    BinaryImage x = read_pbm(in, boundary);
    BinaryImage y = read_pbm(tgt, boundary);
    if (!x.same_shape(y)) {
      fail(ErrorKind::Input, "pair " + in.string() + " / " + tgt.string() + " differ in dimensions");
    }
    pairs.emplace_back(std::move(x), std::move(y));
  }
  return Dataset(std::move(pairs));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

ParamPoint parse_param_or_table(std::string_view text, std::size_t cap) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text.substr(first).rfind("window:", 0) == 0) {
    std::vector<BooleanFunctionTable> tables;
    tables.push_back(parse_table(text, cap));
    return ParamPoint::seq_tables(std::move(tables));
  }
  return parse_param(text, cap);
}

ParamPoint read_param_file(const std::filesystem::path& path, std::size_t cap) {
  try {
    return parse_param_or_table(read_text_file(path), cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

}  // namespace latop::cli
