#include "irgmotif/bigint.hpp"

#include <algorithm>
#include <cmath>

#include "irgmotif/errors.hpp"

namespace irg {

BigUint& BigUint::add_at(std::uint64_t v, std::size_t pos) {
    if (v == 0) return *this;
    if (limbs_.size() <= pos) limbs_.resize(pos + 1, 0);
    std::uint64_t carry = v;
    for (std::size_t i = pos; carry != 0; ++i) {
        if (i == limbs_.size()) {
            limbs_.push_back(carry);
            break;
        }
        std::uint64_t sum = limbs_[i] + carry;
        carry = (sum < carry) ? 1 : 0;
        limbs_[i] = sum;
    }
    return *this;
}

BigUint& BigUint::operator+=(const BigUint& other) {
    for (std::size_t i = 0; i < other.limbs_.size(); ++i) add_at(other.limbs_[i], i);
    return *this;
}

BigUint& BigUint::add_u128(unsigned __int128 v) {
    add_at(static_cast<std::uint64_t>(v), 0);
    add_at(static_cast<std::uint64_t>(v >> 64), 1);
    return *this;
}

BigUint& BigUint::mul_u64(std::uint64_t v) {
    if (v == 0 || limbs_.empty()) {
        limbs_.clear();
        return *this;
    }
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        unsigned __int128 prod = static_cast<unsigned __int128>(limb) * v + carry;
        limb = static_cast<std::uint64_t>(prod);
        carry = static_cast<std::uint64_t>(prod >> 64);
    }
    if (carry != 0) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::shr1() {
    std::uint64_t carry = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t next_carry = limbs_[i] & 1;
        limbs_[i] = (limbs_[i] >> 1) | (carry << 63);
        carry = next_carry;
    }
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    return *this;
}

bool operator<(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
    }
    return false;
}

double BigUint::to_double() const {
    double value = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        value = value * 0x1.0p64 + static_cast<double>(limbs_[i]);
    }
    return value;
}

std::string BigUint::to_string() const {
    if (limbs_.empty()) return "0";
    // Repeated division by 10^19, the largest power of ten in a 64-bit limb.
    constexpr std::uint64_t kBase = 10'000'000'000'000'000'000ULL;
    std::vector<std::uint64_t> work(limbs_.rbegin(), limbs_.rend());  // big-endian scratch
    std::string out;
    while (!work.empty()) {
        unsigned __int128 rem = 0;
        for (auto& limb : work) {
            unsigned __int128 cur = (rem << 64) | limb;
            limb = static_cast<std::uint64_t>(cur / kBase);
            rem = cur % kBase;
        }
        while (!work.empty() && work.front() == 0) work.erase(work.begin());
        std::string chunk = std::to_string(static_cast<std::uint64_t>(rem));
        if (!work.empty()) chunk.insert(0, 19 - chunk.size(), '0');
        out.insert(0, chunk);
    }
    return out;
}

BigUint BigUint::from_decimal(std::string_view text) {
    if (text.empty()) throw_invalid("empty decimal string");
    BigUint out;
    for (char c : text) {
        if (c < '0' || c > '9') throw_invalid("invalid decimal digit in big integer");
        out.mul_u64(10);
        out += static_cast<std::uint64_t>(c - '0');
    }
    return out;
}

BigUint BigUint::binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return BigUint(0);
    k = std::min(k, n - k);
    BigUint result(1);
    for (std::uint64_t i = 0; i < k; ++i) {
        result.mul_u64(n - i);
        // Division by (i+1) is exact; do it limb-wise from the top.
        std::uint64_t divisor = i + 1;
        unsigned __int128 rem = 0;
        for (std::size_t j = result.limbs_.size(); j-- > 0;) {
            unsigned __int128 cur = (rem << 64) | result.limbs_[j];
            result.limbs_[j] = static_cast<std::uint64_t>(cur / divisor);
            rem = cur % divisor;
        }
        while (!result.limbs_.empty() && result.limbs_.back() == 0) result.limbs_.pop_back();
    }
    return result;
}

BigUint BigUint::factorial(std::uint64_t n) {
    BigUint result(1);
    for (std::uint64_t i = 2; i <= n; ++i) result.mul_u64(i);
    return result;
}

}  // namespace irg
