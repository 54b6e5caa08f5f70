#include "wavemu/gf2/matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "wavemu/error.hpp"

namespace wavemu::gf2 {
namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

Vector::Vector(std::size_t length) : length_(length), words_(words_for(length), 0) {}

Vector Vector::from_bits(std::span<const std::uint8_t> bits) {
    Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] & 1u) v.flip(i);
    return v;
}

void Vector::set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

Vector& Vector::operator^=(const Vector& other) {
    if (other.length_ != length_) throw FramingError("gf2::Vector xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool Vector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::uint8_t> Vector::to_bits() const {
    std::vector<std::uint8_t> out(length_);
    for (std::size_t i = 0; i < length_; ++i) out[i] = get(i);
    return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * words_for(cols), 0) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, bool v) {
    auto w = row(r);
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v)
        w[c >> 6] |= mask;
    else
        w[c >> 6] &= ~mask;
}

void Matrix::xor_row(std::size_t dst, std::size_t src) {
    std::uint64_t* d = words_.data() + dst * stride_;
    const std::uint64_t* s = words_.data() + src * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(words_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     words_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     words_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

void Matrix::set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw FramingError("gf2::Matrix::set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) set(r, c, v.get(r));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.set(r, get(r, c));
    return v;
}

Vector Matrix::row_vector(std::size_t r) const {
    Vector v(cols_);
    std::copy(row(r).begin(), row(r).end(), v.words().begin());
    return v;
}

Vector Matrix::multiply(const Vector& x) const {
    if (x.size() != cols_) throw FramingError("gf2::Matrix::multiply: length mismatch");
    Vector y(rows_);
    const auto xw = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto rw = row(r);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < stride_; ++w) acc ^= rw[w] & xw[w];
        if (std::popcount(acc) & 1) y.flip(r);
    }
    return y;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= rows_) throw FramingError("gf2::Matrix::select_rows: index out of range");
        std::copy(row(indices[i]).begin(), row(indices[i]).end(), out.row(i).begin());
    }
    return out;
}

std::string Matrix::to_text() const {
    std::string s;
    s.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

Matrix Matrix::from_text(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    const std::size_t cols = lines.empty() ? 0 : lines.front().size();
    Matrix m(lines.size(), cols);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != cols) throw FramingError("gf2::Matrix::from_text: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            const char ch = lines[r][c];
            if (ch != '0' && ch != '1') throw FramingError("gf2::Matrix::from_text: expected 0/1");
            m.set(r, c, ch == '1');
        }
    }
    return m;
}

std::size_t rank(const Matrix& m) {
    Matrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && !a.get(p, c)) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < a.rows(); ++i)
            if (a.get(i, c)) a.xor_row(i, r);
        ++r;
    }
    return r;
}

}  // namespace wavemu::gf2
