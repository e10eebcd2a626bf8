#include "linkcensus/perm.hpp"

#include <algorithm>

#include "linkcensus/errors.hpp"
#include "linkcensus/faces.hpp"

namespace linkcensus {

template <int N>
Perm<N> Perm<N>::from_images(const std::array<int, N>& images) {
    std::array<std::uint8_t, N> img{};
    std::array<bool, N> seen{};
    for (int v = 0; v < N; ++v) {
        if (images[v] < 0 || images[v] >= N || seen[images[v]])
            throw InvalidPermutation("images do not form a permutation");
        seen[images[v]] = true;
        img[v] = static_cast<std::uint8_t>(images[v]);
    }
    return Perm(static_cast<std::uint8_t>(detail::index_of<N>(img)));
}

template <int N>
std::string Perm<N>::str() const {
    std::string s;
    for (int v = 0; v < N; ++v) s.push_back(static_cast<char>('0' + (*this)[v]));
    return s;
}

template class Perm<3>;
template class Perm<4>;

Perm4 extend_face_perm(int src_face, int dst_face, const std::array<int, 3>& images) {
    const auto src = face_vertices(src_face);
    std::array<int, 4> full{-1, -1, -1, -1};
    for (int i = 0; i < 3; ++i) {
        if (!face_contains(dst_face, images[i]) || images[i] < 0 || images[i] > 3)
            throw InvalidPermutation("image vertex " + std::to_string(images[i]) + " is not on face " +
                                     std::to_string(dst_face));
        full[src[i]] = images[i];
    }
    full[omitted_vertex(src_face)] = omitted_vertex(dst_face);
    return Perm4::from_images(full);
}

Perm4 extend_face_perm(int src_face, int dst_face, Perm3 arrangement) {
    const auto dst = face_vertices(dst_face);
    return extend_face_perm(src_face, dst_face, {dst[arrangement[0]], dst[arrangement[1]], dst[arrangement[2]]});
}

Perm3 restrict_to_face(int src_face, Perm4 p) {
    const auto src = face_vertices(src_face);
    const auto dst = face_vertices(image_face(src_face, p));
    std::array<int, 3> arr{};
    for (int i = 0; i < 3; ++i)
        arr[i] = static_cast<int>(std::find(dst.begin(), dst.end(), p[src[i]]) - dst.begin());
    return Perm3::from_images(arr);
}

}  // namespace linkcensus
