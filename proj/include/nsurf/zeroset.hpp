#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsurf {

// Packed bitmask of length 7n: bit k set means coordinate k vanishes
// throughout the face being described.  Equality, subset and intersection
// are word-wise.
class ZeroSet {
 public:
  ZeroSet() = default;

  explicit ZeroSet(std::size_t nbits, bool all_set = false)
      : nbits_(nbits), words_((nbits + 63) / 64, all_set ? ~std::uint64_t{0} : 0) {
    mask_tail();
  }

  std::size_t size() const { return nbits_; }

  bool test(std::size_t k) const {
    return (words_[k >> 6] >> (k & 63)) & 1u;
  }

  void set(std::size_t k) {
    if (k >= nbits_) throw std::out_of_range("ZeroSet::set");
    words_[k >> 6] |= std::uint64_t{1} << (k & 63);
  }

  void reset(std::size_t k) {
    if (k >= nbits_) throw std::out_of_range("ZeroSet::reset");
    words_[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool subset_of(const ZeroSet& o) const {
    require_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

  ZeroSet intersect(const ZeroSet& o) const {
    require_same(o);
    ZeroSet r(nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  bool operator==(const ZeroSet& o) const {
    return nbits_ == o.nbits_ && words_ == o.words_;
  }
  bool operator!=(const ZeroSet& o) const { return !(*this == o); }

  // Arbitrary total order; used only for deterministic output.
  bool operator<(const ZeroSet& o) const {
    if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
    return words_ < o.words_;
  }

  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    const std::size_t nibbles = (nbits_ + 3) / 4;
    for (std::size_t i = nibbles; i-- > 0;) {
      unsigned v = (words_[i / 16] >> ((i % 16) * 4)) & 0xf;
      s.push_back(digits[v]);
    }
    return s.empty() ? "0" : s;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ nbits_;
    for (std::uint64_t w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  void require_same(const ZeroSet& o) const {
    if (nbits_ != o.nbits_)
      throw std::invalid_argument("ZeroSet: length mismatch");
  }

  void mask_tail() {
    if (nbits_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (nbits_ % 64)) - 1;
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ZeroSetHash {
  std::size_t operator()(const ZeroSet& z) const { return z.hash(); }
};

}  // namespace nsurf
