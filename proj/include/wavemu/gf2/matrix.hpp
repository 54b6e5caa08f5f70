#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wavemu::gf2 {

/// Bit-packed vector over GF(2); bit i lives in word i/64, position i%64.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t length);
    static Vector from_bits(std::span<const std::uint8_t> bits);

    std::size_t size() const { return length_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    Vector& operator^=(const Vector& other);
    friend Vector operator^(Vector a, const Vector& b) { return a ^= b; }
    friend bool operator==(const Vector&, const Vector&) = default;

    bool is_zero() const;
    std::vector<std::uint8_t> to_bits() const;
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense bit-packed row-major matrix over GF(2).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1u; }
    void set(std::size_t r, std::size_t c, bool v);

    std::span<const std::uint64_t> row(std::size_t r) const { return {words_.data() + r * stride_, stride_}; }
    std::span<std::uint64_t> row(std::size_t r) { return {words_.data() + r * stride_, stride_}; }
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    void set_column(std::size_t c, const Vector& v);
    Vector column(std::size_t c) const;
    Vector row_vector(std::size_t r) const;

    /// Matrix-vector product; x.size() must equal cols().
    Vector multiply(const Vector& x) const;

    /// Rows picked in the given order.
    Matrix select_rows(std::span<const std::size_t> indices) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

    /// One line of '0'/'1' characters per row.
    std::string to_text() const;
    static Matrix from_text(const std::string& text);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Rank by Gaussian elimination (works on a copy).
std::size_t rank(const Matrix& m);

}  // namespace wavemu::gf2
