#ifndef TW_BIGINT_HPP
#define TW_BIGINT_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace tw {

// Unsigned arbitrary-precision integer, just big enough for the derived
// size constants, which overflow 64 bits already for small machines.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    BigUint(std::uint64_t v) {  // NOLINT: implicit by design
        limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }

    BigUint operator*(const BigUint& o) const {
        std::vector<std::uint32_t> out(limbs_.size() + o.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (size_t j = 0; j < o.limbs_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                                    out[i + j] + carry;
                out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
            }
            size_t k = i + o.limbs_.size();
            while (carry) {
                std::uint64_t cur = out[k] + carry;
                out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
                ++k;
            }
        }
        BigUint r;
        r.limbs_ = std::move(out);
        r.trim();
        return r;
    }

    BigUint operator+(const BigUint& o) const {
        std::vector<std::uint32_t> out;
        out.reserve(std::max(limbs_.size(), o.limbs_.size()) + 1);
        std::uint64_t carry = 0;
        for (size_t i = 0; i < std::max(limbs_.size(), o.limbs_.size()); ++i) {
            std::uint64_t cur = carry;
            if (i < limbs_.size()) cur += limbs_[i];
            if (i < o.limbs_.size()) cur += o.limbs_[i];
            out.push_back(static_cast<std::uint32_t>(cur & 0xffffffffu));
            carry = cur >> 32;
        }
        if (carry) out.push_back(static_cast<std::uint32_t>(carry));
        BigUint r;
        r.limbs_ = std::move(out);
        r.trim();
        return r;
    }

    static BigUint pow(const BigUint& base, unsigned exp) {
        BigUint r(1);
        for (unsigned i = 0; i < exp; ++i) r = r * base;
        return r;
    }

    bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }
    bool operator<(const BigUint& o) const {
        if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
        for (size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
        return false;
    }
    bool operator<=(const BigUint& o) const { return *this < o || *this == o; }

    bool fits_u64() const { return limbs_.size() <= 2; }
    std::uint64_t as_u64() const {
        std::uint64_t v = limbs_[0];
        if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
        return v;
    }

    std::string to_string() const {
        std::vector<std::uint32_t> work(limbs_);
        std::string digits;
        while (!(work.size() == 1 && work[0] == 0)) {
            std::uint64_t rem = 0;
            for (size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 10);
                rem = cur % 10;
            }
            digits.push_back(static_cast<char>('0' + rem));
            while (work.size() > 1 && work.back() == 0) work.pop_back();
        }
        if (digits.empty()) digits.push_back('0');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

private:
    void trim() {
        while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint32_t> limbs_;  // little-endian base 2^32
};

}  // namespace tw

#endif
