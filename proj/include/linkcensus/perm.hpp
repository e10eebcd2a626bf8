#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace linkcensus {

namespace detail {

constexpr int factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// All permutations of {0..N-1} in lexicographic order of their image tuples.
template <int N>
constexpr std::array<std::array<std::uint8_t, N>, factorial(N)> lex_perms() {
    std::array<std::array<std::uint8_t, N>, factorial(N)> out{};
    std::array<std::uint8_t, N> cur{};
    for (int i = 0; i < N; ++i) cur[i] = static_cast<std::uint8_t>(i);
    for (int idx = 0; idx < factorial(N); ++idx) {
        out[idx] = cur;
        // next_permutation, written out so it stays constexpr-friendly
        int i = N - 2;
        while (i >= 0 && cur[i] >= cur[i + 1]) --i;
        if (i < 0) break;
        int j = N - 1;
        while (cur[j] <= cur[i]) --j;
        std::uint8_t t = cur[i];
        cur[i] = cur[j];
        cur[j] = t;
        for (int a = i + 1, b = N - 1; a < b; ++a, --b) {
            t = cur[a];
            cur[a] = cur[b];
            cur[b] = t;
        }
    }
    return out;
}

template <int N>
inline constexpr auto kPerms = lex_perms<N>();

template <int N>
constexpr int index_of(const std::array<std::uint8_t, N>& images) {
    for (int i = 0; i < factorial(N); ++i)
        if (kPerms<N>[i] == images) return i;
    return -1;
}

template <int N>
constexpr std::array<std::array<std::uint8_t, factorial(N)>, factorial(N)> compose_table() {
    std::array<std::array<std::uint8_t, factorial(N)>, factorial(N)> t{};
    for (int p = 0; p < factorial(N); ++p)
        for (int q = 0; q < factorial(N); ++q) {
            std::array<std::uint8_t, N> img{};
            for (int v = 0; v < N; ++v) img[v] = kPerms<N>[p][kPerms<N>[q][v]];
            t[p][q] = static_cast<std::uint8_t>(index_of<N>(img));
        }
    return t;
}

template <int N>
constexpr std::array<std::uint8_t, factorial(N)> inverse_table() {
    std::array<std::uint8_t, factorial(N)> t{};
    for (int p = 0; p < factorial(N); ++p) {
        std::array<std::uint8_t, N> img{};
        for (int v = 0; v < N; ++v) img[kPerms<N>[p][v]] = static_cast<std::uint8_t>(v);
        t[p] = static_cast<std::uint8_t>(index_of<N>(img));
    }
    return t;
}

template <int N>
constexpr std::array<std::int8_t, factorial(N)> sign_table() {
    std::array<std::int8_t, factorial(N)> t{};
    for (int p = 0; p < factorial(N); ++p) {
        int inversions = 0;
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                if (kPerms<N>[p][a] > kPerms<N>[p][b]) ++inversions;
        t[p] = (inversions % 2 == 0) ? 1 : -1;
    }
    return t;
}

template <int N>
inline constexpr auto kCompose = compose_table<N>();
template <int N>
inline constexpr auto kInverse = inverse_table<N>();
template <int N>
inline constexpr auto kSign = sign_table<N>();

}  // namespace detail

/// A permutation of {0,...,N-1}, stored as its index in the lexicographic
/// ordering of image tuples (0 is always the identity).
template <int N>
class Perm {
public:
    static constexpr int kCount = detail::factorial(N);

    constexpr Perm() = default;

    static constexpr Perm from_index(int index) { return Perm(static_cast<std::uint8_t>(index)); }

    /// Throws InvalidPermutation when the images are not a bijection of {0..N-1}.
    static Perm from_images(const std::array<int, N>& images);

    constexpr int index() const { return code_; }
    constexpr int operator[](int v) const { return detail::kPerms<N>[code_][v]; }
    constexpr int sign() const { return detail::kSign<N>[code_]; }
    constexpr bool is_even() const { return sign() > 0; }
    constexpr bool is_identity() const { return code_ == 0; }
    constexpr Perm inverse() const { return Perm(detail::kInverse<N>[code_]); }

    /// (p * q)(v) = p(q(v)).
    friend constexpr Perm operator*(Perm p, Perm q) { return Perm(detail::kCompose<N>[p.code_][q.code_]); }
    friend constexpr bool operator==(Perm a, Perm b) = default;
    friend constexpr auto operator<=>(Perm a, Perm b) = default;

    /// Image tuple as a digit string, e.g. "0132".
    std::string str() const;

private:
    constexpr explicit Perm(std::uint8_t code) : code_(code) {}
    std::uint8_t code_ = 0;
};

using Perm3 = Perm<3>;
using Perm4 = Perm<4>;

extern template class Perm<3>;
extern template class Perm<4>;

}  // namespace linkcensus
