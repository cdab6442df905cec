#ifndef ASX_COMMON_HPP
#define ASX_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace asx {

enum class Errc {
    A1Violation,
    A2Violation,
    A3Violation,
    GapError,
    NotTransitive,
    NotBijection,
    RangeError,
    ArityMismatch,
    ShapeMismatch,
    DimensionMismatch,
    HeightUnavailable,
    HeightOutOfRange,
    ResourceBudget,
    BaseMismatch,
    ParseError,
};

inline const char* errc_name(Errc k) {
    switch (k) {
        case Errc::A1Violation: return "A1Violation";
        case Errc::A2Violation: return "A2Violation";
        case Errc::A3Violation: return "A3Violation";
        case Errc::GapError: return "GapError";
        case Errc::NotTransitive: return "NotTransitive";
        case Errc::NotBijection: return "NotBijection";
        case Errc::RangeError: return "RangeError";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::HeightUnavailable: return "HeightUnavailable";
        case Errc::HeightOutOfRange: return "HeightOutOfRange";
        case Errc::ResourceBudget: return "ResourceBudget";
        case Errc::BaseMismatch: return "BaseMismatch";
        case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc kind, const std::string& msg)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + msg), kind_(kind) {}

    Errc kind() const { return kind_; }

private:
    Errc kind_;
};

[[noreturn]] inline void fail(Errc kind, const std::string& msg) { throw Error(kind, msg); }

/// Default cap on the number of dense color entries a single layer may hold.
inline constexpr std::uint64_t kDefaultEntryBudget = 100'000'000;

/// d^a with overflow detection.
inline std::uint64_t checked_pow(int d, int a) {
    std::uint64_t r = 1;
    for (int i = 0; i < a; ++i) {
        if (r > UINT64_MAX / static_cast<std::uint64_t>(d))
            fail(Errc::ResourceBudget, "tuple space size overflows 64 bits");
        r *= static_cast<std::uint64_t>(d);
    }
    return r;
}

}  // namespace asx

#endif
