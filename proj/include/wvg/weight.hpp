#pragma once

#include "wvg/bigint.hpp"
#include "wvg/errors.hpp"

#include <compare>
#include <memory>
#include <string_view>
#include <utility>

namespace wvg {

/// A nonnegative vote weight. Immutable; copies share storage, so a game
/// with millions of equal-weight filler players stays cheap to hold.
class Weight {
public:
    Weight() : value_(shared_zero()) {}

    explicit Weight(BigInt v) {
        if (v < 0)
            throw InvalidArgumentError("Weight: negative value " + v.str());
        value_ = std::make_shared<const BigInt>(std::move(v));
    }

    explicit Weight(unsigned long long v) : Weight(BigInt(v)) {}

    static Weight from_decimal(std::string_view text) { return Weight(parse_decimal(text)); }

    const BigInt& value() const { return *value_; }
    std::string str() const { return value_->str(); }

    /// True when both weights share one underlying buffer (implies equality).
    friend bool shares_value(const Weight& a, const Weight& b) { return a.value_ == b.value_; }

    friend bool operator==(const Weight& a, const Weight& b) {
        return a.value_ == b.value_ || *a.value_ == *b.value_;
    }
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
        const int c = a.value_->compare(*b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    static std::shared_ptr<const BigInt> shared_zero() {
        static const auto zero = std::make_shared<const BigInt>(0);
        return zero;
    }

    std::shared_ptr<const BigInt> value_;
};

} // namespace wvg
