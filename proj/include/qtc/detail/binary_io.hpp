#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "qtc/errors.hpp"

namespace qtc::detail {

// Little-endian primitives shared by the container formats. Encoding is done
// by explicit byte shuffling so files are identical regardless of host order.

inline void write_u8(std::ostream& os, std::uint8_t v) {
  os.put(static_cast<char>(v));
}

inline void write_u16(std::ostream& os, std::uint16_t v) {
  std::array<char, 2> b;
  for (int i = 0; i < 2; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(b.data(), 2);
}

inline void write_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(b.data(), 4);
}

inline void write_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(b.data(), 8);
}

inline void write_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  write_u64(os, bits);
}

inline void write_bytes(std::ostream& os, const void* data, std::size_t n) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

inline std::uint8_t read_u8(std::istream& is, const char* what) {
  const int c = is.get();
  if (c == std::char_traits<char>::eof()) throw io_error(std::string("unexpected end of file reading ") + what);
  return static_cast<std::uint8_t>(c);
}

inline std::uint16_t read_u16(std::istream& is, const char* what) {
  std::array<char, 2> b;
  if (!is.read(b.data(), 2)) throw io_error(std::string("unexpected end of file reading ") + what);
  std::uint16_t v = 0;
  for (int i = 0; i < 2; ++i) v = static_cast<std::uint16_t>(v | (static_cast<std::uint8_t>(b[i]) << (8 * i)));
  return v;
}

inline std::uint32_t read_u32(std::istream& is, const char* what) {
  std::array<char, 4> b;
  if (!is.read(b.data(), 4)) throw io_error(std::string("unexpected end of file reading ") + what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[i])) << (8 * i);
  return v;
}

inline std::uint64_t read_u64(std::istream& is, const char* what) {
  std::array<char, 8> b;
  if (!is.read(b.data(), 8)) throw io_error(std::string("unexpected end of file reading ") + what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(b[i])) << (8 * i);
  return v;
}

inline double read_f64(std::istream& is, const char* what) {
  const std::uint64_t bits = read_u64(is, what);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

inline void read_bytes(std::istream& is, void* data, std::size_t n, const char* what) {
  if (!is.read(static_cast<char*>(data), static_cast<std::streamsize>(n)))
    throw io_error(std::string("unexpected end of file reading ") + what);
}

inline void expect_magic(std::istream& is, const char* magic, const char* format) {
  const std::size_t n = std::strlen(magic);
  std::array<char, 16> b{};
  if (!is.read(b.data(), static_cast<std::streamsize>(n)) || std::memcmp(b.data(), magic, n) != 0)
    throw io_error(std::string("not a ") + format + " file (bad magic bytes)");
}

}  // namespace qtc::detail
