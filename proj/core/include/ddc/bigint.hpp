#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>

namespace ddc {

using BigInt = boost::multiprecision::cpp_int;

/// Sums in 64 bits and switches to arbitrary precision on the first overflow.
class Counter
{
public:
    void add(std::uint64_t v)
    {
        if (! wide_ && ! __builtin_add_overflow(small_, v, &small_))
            return;
        if (! wide_) {
            // small_ already holds the wrapped sum; rebuild it exactly.
            big_ = BigInt(small_) + (BigInt(1) << 64);
            wide_ = true;
            return;
        }
        big_ += v;
    }

    void add(const BigInt & v)
    {
        if (v <= std::numeric_limits<std::uint64_t>::max())
            return add(static_cast<std::uint64_t>(v));
        widen();
        big_ += v;
    }

    auto value() const -> BigInt { return wide_ ? big_ : BigInt(small_); }

private:
    void widen()
    {
        if (! wide_) {
            big_ = small_;
            wide_ = true;
        }
    }

    std::uint64_t small_ = 0;
    BigInt big_;
    bool wide_ = false;
};

} // namespace ddc
