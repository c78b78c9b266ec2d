#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cyclotome {

// Fixed-size bit set indexed by element code.
class Bitmask {
 public:
  Bitmask() = default;
  explicit Bitmask(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept;
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  std::size_t count() const noexcept;

  bool operator==(const Bitmask&) const = default;

  // ceil(size/8) bytes as lowercase hex; bit j of byte b is code 8b+j.
  std::string to_hex() const;
  static Bitmask from_hex(std::string_view hex, std::size_t size);

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cyclotome
