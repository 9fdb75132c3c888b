#include "latop/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

namespace latop {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Size: return "size error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

namespace {

const std::shared_ptr<const std::vector<Offset>>& empty_offsets() {
  static const auto empty = std::make_shared<const std::vector<Offset>>();
  return empty;
}

void require_same_window(const Window& a, const Window& b, const char* what) {
  if (!(a == b)) {
    fail(ErrorKind::Input, std::string(what) + ": operands are defined on different windows (" +
                               to_string(a) + " vs " + to_string(b) + ")");
  }
}

}  // namespace

Window::Window() : offsets_(empty_offsets()) {}

Window::Window(std::vector<Offset> offsets, std::size_t cap) {
  std::sort(offsets.begin(), offsets.end());
  if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end()) {
    fail(ErrorKind::Input, "window offsets must be distinct");
  }
  const std::size_t limit = std::min(cap, kMaxWindowBits);
  if (offsets.size() > limit) {
    fail(ErrorKind::Size, "window has " + std::to_string(offsets.size()) + " offsets (cap " +
                              std::to_string(limit) + ")");
  }
  offsets_ = std::make_shared<const std::vector<Offset>>(std::move(offsets));
}

Window Window::rectangle(int rows, int cols, std::size_t cap) {
  if (rows <= 0 || cols <= 0 || rows % 2 == 0 || cols % 2 == 0) {
    fail(ErrorKind::Input, "rectangular windows need positive odd dimensions");
  }
  std::vector<Offset> offsets;
  for (int r = -rows / 2; r <= rows / 2; ++r) {
    for (int c = -cols / 2; c <= cols / 2; ++c) offsets.push_back({r, c});
  }
  return Window(std::move(offsets), cap);
}

int Window::index_of(Offset o) const {
  const auto& v = *offsets_;
  auto it = std::lower_bound(v.begin(), v.end(), o);
  if (it == v.end() || *it != o) return -1;
  return static_cast<int>(it - v.begin());
}

int Window::row_radius() const {
  int r = 0;
  for (const auto& o : *offsets_) r = std::max(r, std::abs(o.row));
  return r;
}

int Window::col_radius() const {
  int r = 0;
  for (const auto& o : *offsets_) r = std::max(r, std::abs(o.col));
  return r;
}

bool operator==(const Window& a, const Window& b) {
  return a.offsets_ == b.offsets_ || *a.offsets_ == *b.offsets_;
}

bool operator<(const Window& a, const Window& b) { return *a.offsets_ < *b.offsets_; }

Subset::Subset(Window window, Mask bits) : window_(std::move(window)), bits_(bits) {
  if ((bits_ & ~window_.full_mask()) != 0) {
    fail(ErrorKind::Input, "subset mask has bits outside its window");
  }
}

Subset Subset::of(const Window& window, std::span<const Offset> members) {
  return Subset(window, mask_of(window, members));
}

bool Subset::contains(Offset o) const {
  const int j = window_.index_of(o);
  return j >= 0 && ((bits_ >> j) & 1U) != 0;
}

std::size_t Subset::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<Offset> Subset::members() const {
  std::vector<Offset> out;
  for (std::size_t j = 0; j < window_.size(); ++j) {
    if ((bits_ >> j) & 1U) out.push_back(window_[j]);
  }
  return out;
}

bool Subset::subset_of(const Subset& other) const { return leq(*this, other); }

Interval::Interval(Subset lower, Subset upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_window(lower_.window(), upper_.window(), "interval");
  if ((lower_.bits() & ~upper_.bits()) != 0) {
    fail(ErrorKind::Input, "interval lower endpoint is not contained in the upper endpoint");
  }
}

Interval::Interval(const Window& window, Mask lower, Mask upper)
    : Interval(Subset(window, lower), Subset(window, upper)) {}

bool leq(const Subset& a, const Subset& b) {
  require_same_window(a.window(), b.window(), "leq");
  return (a.bits() & ~b.bits()) == 0;
}

bool leq(const Interval& a, const Interval& b) {
  require_same_window(a.window(), b.window(), "leq");
  return (b.lower().bits() & ~a.lower().bits()) == 0 && (a.upper().bits() & ~b.upper().bits()) == 0;
}

bool canonical_less(const Interval& a, const Interval& b) {
  if (a.lower().bits() != b.lower().bits()) return a.lower().bits() < b.lower().bits();
  return a.upper().bits() < b.upper().bits();
}

std::vector<Interval> max_antichain(std::span<const Interval> items) {
  if (items.empty()) return {};
  const Window& w = items.front().window();
  for (const auto& it : items) require_same_window(w, it.window(), "max_antichain");

  std::vector<Interval> sorted(items.begin(), items.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<Interval> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sorted.size() && !dominated; ++j) {
      dominated = i != j && leq(sorted[i], sorted[j]);
    }
    if (!dominated) out.push_back(sorted[i]);
  }
  return out;
}

std::vector<Subset> hamming_neighbors(const Subset& s) {
  std::vector<Subset> out;
  out.reserve(s.window().size());
  for (std::size_t j = 0; j < s.window().size(); ++j) {
    out.emplace_back(s.window(), s.bits() ^ (Mask{1} << j));
  }
  return out;
}

std::string to_string(Offset o) {
  return "(" + std::to_string(o.row) + "," + std::to_string(o.col) + ")";
}

std::string render_mask(const Window& w, Mask bits) {
  std::string out = "{";
  bool first = true;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!((bits >> j) & 1U)) continue;
    if (!first) out += ',';
    out += to_string(w[j]);
    first = false;
  }
  out += '}';
  return out;
}

std::string to_string(const Window& w) { return render_mask(w, w.full_mask()); }
std::string to_string(const Subset& s) { return render_mask(s.window(), s.bits()); }
std::string to_string(const Interval& i) {
  return "[" + to_string(i.lower()) + "," + to_string(i.upper()) + "]";
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  int integer() {
    skip_ws();
    int value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{}) error("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  std::vector<Offset> offset_set() {
    std::vector<Offset> out;
    expect('{');
    if (peek('}')) {
      ++pos_;
      return out;
    }
    while (true) {
      expect('(');
      const int r = integer();
      expect(',');
      const int c = integer();
      expect(')');
      out.push_back({r, c});
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect('}');
      return out;
    }
  }
  void finish() {
    skip_ws();
    if (pos_ != text_.size()) error("trailing characters");
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, what + " at column " + std::to_string(pos_ + 1) + " in \"" +
                               std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Offset> parse_offset_set(std::string_view text) {
  Scanner s(text);
  auto out = s.offset_set();
  s.finish();
  return out;
}

Window parse_window(std::string_view text, std::size_t cap) {
  return Window(parse_offset_set(text), cap);
}

Mask mask_of(const Window& w, std::span<const Offset> sub) {
  Mask m = 0;
  for (const auto& o : sub) {
    const int j = w.index_of(o);
    if (j < 0) fail(ErrorKind::Input, "offset " + to_string(o) + " is not in window " + to_string(w));
    m |= Mask{1} << j;
  }
  return m;
}

Subset parse_subset(const Window& w, std::string_view text) {
  const auto offsets = parse_offset_set(text);
  return Subset(w, mask_of(w, offsets));
}

Interval parse_interval(const Window& w, std::string_view text) {
  Scanner s(text);
  s.expect('[');
  const auto lower = s.offset_set();
  s.expect(',');
  const auto upper = s.offset_set();
  s.expect(']');
  s.finish();
  return Interval(w, mask_of(w, lower), mask_of(w, upper));
}

}  // namespace latop
