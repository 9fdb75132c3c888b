#include "latop/repr.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>
#include <sstream>

namespace latop {

BooleanFunctionTable::BooleanFunctionTable(Window window, bool fill, std::size_t cap)
    : window_(std::move(window)) {
  if (window_.size() > cap) {
    fail(ErrorKind::Size, "cannot tabulate a function on " + std::to_string(window_.size()) +
                              " window points (cap " + std::to_string(cap) + ")");
  }
  values_.assign(std::size_t{1} << window_.size(), fill);
}

BooleanFunctionTable::BooleanFunctionTable(Window window, std::vector<bool> values)
    : window_(std::move(window)), values_(std::move(values)) {
  if (window_.size() > kMaxWindowBits || values_.size() != (std::size_t{1} << window_.size())) {
    fail(ErrorKind::Input, "table length must be 2^|W|");
  }
}

std::size_t BooleanFunctionTable::count_ones() const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), true));
}

BooleanFunctionTable characteristic_of(const Operator& realizer, const Window& w, std::size_t cap) {
  BooleanFunctionTable table(w, false, cap);
  const int height = 2 * w.row_radius() + 2;
  const int width = 2 * w.col_radius() + 2;
  for (std::size_t m = 0; m < table.size(); ++m) {
    BinaryImage canvas(height, width, Boundary::Toroidal);
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (!((m >> j) & 1U)) continue;
      int r = w[j].row % height;
      int c = w[j].col % width;
      canvas.set(r < 0 ? r + height : r, c < 0 ? c + width : c, true);
    }
    const BinaryImage out = realizer(canvas);
    table.set(static_cast<Mask>(m), out.get(0, 0));
  }
  return table;
}

KernelSet kernel_of(const BooleanFunctionTable& f) {
  KernelSet k{f.window(), {}};
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (f[static_cast<Mask>(m)]) k.members.emplace_back(f.window(), static_cast<Mask>(m));
  }
  return k;
}

namespace {

// Fixed-length bit vector over the 2^n subset masks.
class MaskSet {
 public:
  explicit MaskSet(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t nbits() const { return nbits_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }

  // result[i] = this[i + k]
  MaskSet shifted_down(std::size_t k) const {
    MaskSet out(nbits_);
    const std::size_t ws = k / 64, bs = k % 64, n = words_.size();
    for (std::size_t i = 0; i + ws < n; ++i) {
      std::uint64_t v = words_[i + ws] >> bs;
      if (bs != 0 && i + ws + 1 < n) v |= words_[i + ws + 1] << (64 - bs);
      out.words_[i] = v;
    }
    return out;
  }

  // result[i] = this[i - k]
  MaskSet shifted_up(std::size_t k) const {
    MaskSet out(nbits_);
    const std::size_t ws = k / 64, bs = k % 64, n = words_.size();
    for (std::size_t i = ws; i < n; ++i) {
      std::uint64_t v = words_[i - ws] << bs;
      if (bs != 0 && i >= ws + 1) v |= words_[i - ws - 1] >> (64 - bs);
      out.words_[i] = v;
    }
    out.trim();
    return out;
  }

  MaskSet& operator&=(const MaskSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  MaskSet& operator|=(const MaskSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  MaskSet& and_not(const MaskSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const int b = std::countr_zero(w);
        fn(i * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

 private:
  void trim() {
    if (nbits_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (nbits_ % 64)) - 1;
  }

  std::size_t nbits_;
  std::vector<std::uint64_t> words_;
};

// State shared by the depth-first walk over free-variable masks.
struct BasisSearch {
  std::size_t n;
  std::size_t len;
  std::vector<MaskSet> has_bit;  // has_bit[j][V] = bit j of V
  std::vector<std::pair<Mask, Mask>> primes;

  // `cubes` holds, for free mask `free`, every V (disjoint from `free`) such
  // that the whole interval [V, V|free] lies in the kernel.
  void visit(Mask free, const MaskSet& cubes) {
    // A cube is prime when none of its fixed bits can be freed, i.e. the cube
    // obtained by flipping that fixed bit is absent.
    MaskSet mergeable(len);
    for (std::size_t j = 0; j < n; ++j) {
      if ((free >> j) & 1U) continue;
      const std::size_t step = std::size_t{1} << j;
      MaskSet up = cubes.shifted_down(step);  // V -> V + 2^j (bit j clear in V)
      up.and_not(has_bit[j]);
      MaskSet down = cubes.shifted_up(step);  // V -> V - 2^j (bit j set in V)
      down &= has_bit[j];
      mergeable |= up;
      mergeable |= down;
    }
    MaskSet prime = cubes;
    prime.and_not(mergeable);
    prime.for_each([&](std::size_t v) {
      primes.emplace_back(static_cast<Mask>(v), static_cast<Mask>(v) | free);
    });

    // Children free one more bit above the highest free bit, merging the two
    // halves [V, V|free] and [V|h, V|h|free].
    const std::size_t start = free == 0 ? 0 : static_cast<std::size_t>(std::bit_width(free));
    for (std::size_t h = start; h < n; ++h) {
      MaskSet merged = cubes.shifted_down(std::size_t{1} << h);
      merged &= cubes;
      merged.and_not(has_bit[h]);
      if (merged.any()) visit(free | (Mask{1} << h), merged);
    }
  }
};

}  // namespace

Basis basis_of(const BooleanFunctionTable& f, std::size_t cap) {
  const Window& w = f.window();
  if (w.size() > cap) {
    fail(ErrorKind::Size, "basis extraction on " + std::to_string(w.size()) + " window points exceeds cap " +
                              std::to_string(cap) + " (window " + to_string(w) + ")");
  }
  BasisSearch search{w.size(), f.size(), {}, {}};
  for (std::size_t j = 0; j < search.n; ++j) {
    MaskSet hb(search.len);
    for (std::size_t v = 0; v < search.len; ++v) {
      if ((v >> j) & 1U) hb.set(v);
    }
    search.has_bit.push_back(std::move(hb));
  }
  MaskSet minterms(search.len);
  for (std::size_t v = 0; v < search.len; ++v) {
    if (f[static_cast<Mask>(v)]) minterms.set(v);
  }
  if (minterms.any()) search.visit(0, minterms);

  std::sort(search.primes.begin(), search.primes.end());
  Basis b{w, {}};
  b.intervals.reserve(search.primes.size());
  for (const auto& [lo, hi] : search.primes) b.intervals.emplace_back(w, lo, hi);
  return b;
}

BooleanFunctionTable reconstruct(const Basis& b) {
  BooleanFunctionTable f(b.window, false, kMaxWindowBits);
  for (const auto& i : b.intervals) {
    const Mask lo = i.lower().bits();
    const Mask free = i.upper().bits() & ~lo;
    Mask sub = free;
    while (true) {
      f.set(lo | sub, true);
      if (sub == 0) break;
      sub = (sub - 1) & free;
    }
  }
  return f;
}

PropertyReport property_report(const Basis& b) {
  PropertyReport r;
  const Mask full = b.window.full_mask();
  const int origin = b.window.index_of(kOrigin);
  const Mask o = origin >= 0 ? Mask{1} << origin : 0;

  r.is_increasing = std::all_of(b.intervals.begin(), b.intervals.end(),
                                [&](const Interval& i) { return i.upper().bits() == full; });
  r.contains_full_interval_from_origin =
      origin >= 0 && std::any_of(b.intervals.begin(), b.intervals.end(), [&](const Interval& i) {
        return i.lower().bits() == o && i.upper().bits() == full;
      });
  r.origin_in_all_lower_endpoints =
      std::all_of(b.intervals.begin(), b.intervals.end(),
                  [&](const Interval& i) { return origin >= 0 && (i.lower().bits() & o) != 0; });
  return r;
}

std::string serialize_basis(const Basis& b) {
  std::string out;
  for (const auto& i : b.intervals) out += to_string(i) + "\n";
  return out;
}

Basis parse_basis(const Window& w, std::string_view text) {
  Basis b{w, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    b.intervals.push_back(parse_interval(w, line));
  }
  b.intervals = max_antichain(b.intervals);
  return b;
}

std::string table_hex(const BooleanFunctionTable& f) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nbytes = std::max<std::size_t>(1, (f.size() + 7) / 8);
  std::string out;
  out.reserve(nbytes * 2);
  for (std::size_t byte = 0; byte < nbytes; ++byte) {
    unsigned v = 0;
    for (std::size_t bit = 0; bit < 8; ++bit) {
      const std::size_t m = byte * 8 + bit;
      if (m < f.size() && f[static_cast<Mask>(m)]) v |= 1U << bit;
    }
    out += kDigits[v >> 4];
    out += kDigits[v & 15];
  }
  return out;
}

BooleanFunctionTable table_from_hex(const Window& w, std::string_view hex) {
  std::string digits;
  for (char c : hex) {
    if (!std::isspace(static_cast<unsigned char>(c))) digits += c;
  }
  BooleanFunctionTable f(w, false, kMaxWindowBits);
  const std::size_t nbytes = std::max<std::size_t>(1, (f.size() + 7) / 8);
  if (digits.size() != nbytes * 2) {
    fail(ErrorKind::Parse, "table hex has " + std::to_string(digits.size()) + " digits, expected " +
                               std::to_string(nbytes * 2));
  }
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    fail(ErrorKind::Parse, std::string("invalid hex digit '") + c + "'");
  };
  for (std::size_t byte = 0; byte < nbytes; ++byte) {
    const unsigned v = nibble(digits[2 * byte]) << 4 | nibble(digits[2 * byte + 1]);
    for (std::size_t bit = 0; bit < 8; ++bit) {
      const std::size_t m = byte * 8 + bit;
      const bool on = (v >> bit) & 1U;
      if (m < f.size()) {
        f.set(static_cast<Mask>(m), on);
      } else if (on) {
        fail(ErrorKind::Parse, "table hex sets padding bits beyond 2^|W| entries");
      }
    }
  }
  return f;
}

std::string serialize_table(const BooleanFunctionTable& f) {
  return "window: " + to_string(f.window()) + "\n" + table_hex(f) + "\n";
}

BooleanFunctionTable parse_table(std::string_view text, std::size_t cap) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Window> window;
  std::string hex;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!window) {
      constexpr std::string_view kKey = "window:";
      if (line.rfind(kKey, 0) != 0) fail(ErrorKind::Parse, "table must start with 'window:'");
      window = parse_window(std::string_view(line).substr(kKey.size()), cap);
    } else {
      hex += line;
    }
  }
  if (!window) fail(ErrorKind::Parse, "empty table text");
  return table_from_hex(*window, hex);
}

}  // namespace latop
