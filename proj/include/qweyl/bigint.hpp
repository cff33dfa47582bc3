#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qweyl {

// Signed arbitrary-precision integer. Magnitude is little-endian base-2^32.
// Zero is represented by an empty limb vector and sign 0.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const;
    bool is_minus_one() const;
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;

    // Decimal representation, with leading '-' for negatives.
    std::string to_string() const;

    // Exact conversion; throws std::overflow_error if out of range.
    long long to_ll() const;

private:
    int sign_ = 0;
    std::vector<uint32_t> limbs_;

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    void trim();
};

inline BigInt operator*(long long a, const BigInt& b) { return BigInt(a) * b; }

} // namespace qweyl
