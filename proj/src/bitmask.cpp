#include "cyclotome/bitmask.hpp"

#include <bit>

#include "cyclotome/error.hpp"

namespace cyclotome {

Bitmask::Bitmask(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

void Bitmask::set(std::size_t i, bool value) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t Bitmask::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string Bitmask::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nbytes = (size_ + 7) / 8;
  std::string out;
  out.reserve(2 * nbytes);
  for (std::size_t b = 0; b < nbytes; ++b) {
    const auto byte = static_cast<unsigned>((words_[b / 8] >> (8 * (b % 8))) & 0xffu);
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xf]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bitmask Bitmask::from_hex(std::string_view hex, std::size_t size) {
  const std::size_t nbytes = (size + 7) / 8;
  if (hex.size() != 2 * nbytes) {
    throw Error(Errc::InvalidInput, "bitmask payload has " + std::to_string(hex.size()) +
                                        " hex digits, expected " + std::to_string(2 * nbytes));
  }
  Bitmask mask(size);
  for (std::size_t b = 0; b < nbytes; ++b) {
    const int hi = hex_value(hex[2 * b]);
    const int lo = hex_value(hex[2 * b + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::InvalidInput, "non-hex character in bitmask payload");
    const auto byte = static_cast<std::uint64_t>(hi * 16 + lo);
    for (unsigned j = 0; j < 8; ++j) {
      if (!((byte >> j) & 1u)) continue;
      const std::size_t code = 8 * b + j;
      if (code >= size) throw Error(Errc::InvalidInput, "bitmask payload sets bits past the field order");
      mask.set(code);
    }
  }
  return mask;
}

}  // namespace cyclotome
