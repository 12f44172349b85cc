#pragma once

#include "ceq/error.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace ceq {

/// A pure action profile of a binary-action game, i.e. a vertex of the
/// n-dimensional hypercube. Player i (1-based) occupies bit i-1 of the code;
/// the display form is the string s_1 s_2 ... s_n, so profile "10" has
/// code 1 and profile "01" has code 2.
class Profile {
public:
    constexpr Profile() = default;
    constexpr explicit Profile(std::uint64_t code) : code_(code) {}

    constexpr std::uint64_t code() const { return code_; }

    /// Action of `player` (1-based) at this profile.
    constexpr int bit(int player) const {
        return static_cast<int>((code_ >> (player - 1)) & 1u);
    }

    /// The hypercube neighbor obtained by switching `player`'s action.
    constexpr Profile flip(int player) const {
        return Profile(code_ ^ (std::uint64_t{1} << (player - 1)));
    }

    std::string bitstring(int n) const {
        std::string out(static_cast<std::size_t>(n), '0');
        for (int i = 1; i <= n; ++i) {
            out[static_cast<std::size_t>(i - 1)] = static_cast<char>('0' + bit(i));
        }
        return out;
    }

    static Profile from_bitstring(const std::string& s) {
        std::uint64_t code = 0;
        if (s.empty() || s.size() > 63) {
            throw ParseError("bad profile bitstring: '" + s + "'");
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                code |= std::uint64_t{1} << i;
            } else if (s[i] != '0') {
                throw ParseError("bad profile bitstring: '" + s + "'");
            }
        }
        return Profile(code);
    }

    friend constexpr auto operator<=>(const Profile&, const Profile&) = default;

private:
    std::uint64_t code_ = 0;
};

}  // namespace ceq
