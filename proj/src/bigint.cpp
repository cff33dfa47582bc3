#include "qweyl/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace qweyl {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ull
                                 : static_cast<unsigned long long>(v);
    while (m) {
        limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffull));
        m >>= 32;
    }
}

bool BigInt::is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }
bool BigInt::is_minus_one() const { return sign_ == -1 && limbs_.size() == 1 && limbs_[0] == 1; }

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& hi = a.size() >= b.size() ? a : b;
    const std::vector<uint32_t>& lo = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t k = 0; k < hi.size(); ++k) {
        uint64_t s = carry + hi[k] + (k < lo.size() ? lo[k] : 0u);
        r[k] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        int64_t s = static_cast<int64_t>(a[k]) - borrow - (k < b.size() ? b[k] : 0u);
        if (s < 0) {
            s += (1ll << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[k] = static_cast<uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.sign_ = sign_;
        r.limbs_ = add_mag(limbs_, o.limbs_);
    } else {
        int c = cmp_mag(limbs_, o.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = sign_;
            r.limbs_ = sub_mag(limbs_, o.limbs_);
        } else {
            r.sign_ = o.sign_;
            r.limbs_ = sub_mag(o.limbs_, limbs_);
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.sign_ = sign_ * o.sign_;
    r.limbs_ = mul_mag(limbs_, o.limbs_);
    r.trim();
    return r;
}

BigInt& BigInt::operator+=(const BigInt& o) { *this = *this + o; return *this; }
BigInt& BigInt::operator-=(const BigInt& o) { *this = *this - o; return *this; }
BigInt& BigInt::operator*=(const BigInt& o) { *this = *this * o; return *this; }

bool BigInt::operator==(const BigInt& o) const {
    return sign_ == o.sign_ && limbs_ == o.limbs_;
}

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    int c = cmp_mag(limbs_, o.limbs_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    // repeated division of the magnitude by 10^9
    std::vector<uint32_t> m = limbs_;
    std::string digits;
    while (!m.empty()) {
        uint64_t rem = 0;
        for (size_t k = m.size(); k-- > 0;) {
            uint64_t cur = (rem << 32) | m[k];
            m[k] = static_cast<uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        for (int t = 0; t < 9; ++t) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

long long BigInt::to_ll() const {
    if (sign_ == 0) return 0;
    if (limbs_.size() > 2) throw std::overflow_error("BigInt::to_ll: out of range");
    unsigned long long m = limbs_[0];
    if (limbs_.size() == 2) m |= static_cast<unsigned long long>(limbs_[1]) << 32;
    if (sign_ > 0) {
        if (m > 0x7fffffffffffffffull) throw std::overflow_error("BigInt::to_ll: out of range");
        return static_cast<long long>(m);
    }
    if (m > 0x8000000000000000ull) throw std::overflow_error("BigInt::to_ll: out of range");
    return static_cast<long long>(~m + 1ull);
}

} // namespace qweyl
