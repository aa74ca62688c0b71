#pragma once

#include <array>
#include <cstddef>

namespace ejmnet {

// One outcome vertex of the regular tetrahedron inscribed in the Bloch
// cube: index b in {1..4} plus the +-1 triple m_b. The four triples have
// pairwise dot product -1 and entry product +1.
struct TetraVertex {
    int b = 1;                      // outcome label, 1-based
    std::array<int, 3> m{1, 1, 1};  // entries are +1 or -1
};

inline const std::array<TetraVertex, 4>& tetra_vertices() {
    static const std::array<TetraVertex, 4> verts{{
        {1, {+1, +1, +1}},
        {2, {+1, -1, -1}},
        {3, {-1, +1, -1}},
        {4, {-1, -1, +1}},
    }};
    return verts;
}

// Local hidden variables live on the 8 vectors +-m_1..+-m_4, indexed
// 0..3 for +m_b and 4..7 for -m_b. This order is part of the model
// serialization format.
inline std::array<int, 3> local_variable_vector(std::size_t index) {
    const auto& verts = tetra_vertices();
    const auto& m = verts[index % 4].m;
    int s = index < 4 ? 1 : -1;
    return {s * m[0], s * m[1], s * m[2]};
}

inline const char* local_variable_label(std::size_t index) {
    static const char* labels[8] = {"+m1", "+m2", "+m3", "+m4",
                                    "-m1", "-m2", "-m3", "-m4"};
    return labels[index];
}

// Sign bit (0 for +1, 1 for -1) of component x of local variable `index`;
// this is the deterministic +-1 outcome assignment a = alpha_x.
inline int local_variable_outcome_bit(std::size_t index, int x) {
    return local_variable_vector(index)[static_cast<std::size_t>(x)] > 0 ? 0 : 1;
}

}
