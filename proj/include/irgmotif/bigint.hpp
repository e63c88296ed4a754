#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace irg {

// Unsigned big integer, just wide enough for motif counts (clique counts in
// dense cores can exceed 2^64). Little-endian 64-bit limbs, no trailing zeros.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) {  // NOLINT(google-explicit-constructor)
        if (v != 0) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 1; }
    std::uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    BigUint& operator+=(const BigUint& other);
    BigUint& operator+=(std::uint64_t v) { return add_at(v, 0); }
    BigUint& add_u128(unsigned __int128 v);
    BigUint& mul_u64(std::uint64_t v);
    BigUint& shr1();  // divide by two, value must be even when used for cycle totals

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return !(a == b); }
    friend bool operator<(const BigUint& a, const BigUint& b);
    friend bool operator<=(const BigUint& a, const BigUint& b) { return a < b || a == b; }

    double to_double() const;
    std::string to_string() const;
    static BigUint from_decimal(std::string_view text);
    static BigUint binomial(std::uint64_t n, std::uint64_t k);
    static BigUint factorial(std::uint64_t n);

private:
    BigUint& add_at(std::uint64_t v, std::size_t pos);
    std::vector<std::uint64_t> limbs_;
};

}  // namespace irg
