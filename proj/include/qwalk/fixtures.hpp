#pragma once

#include <string>
#include <vector>

#include "qwalk/walkspec.hpp"

namespace qwalk::fixtures {

/// U = S (scalar shift), the free walk.
WalkSpec free_walk();
/// alpha * I_n
WalkSpec constant_walk(Complex alpha, int n = 1);
WalkSpec identity(int n);

/// (1/2) diag(S^-3, S^-1, S, S^3) times the 4x4 Grover coin.
WalkSpec grover4();
/// (1/3) diag(S^-1, 1, S) times the 3x3 Grover coin.
WalkSpec grover3();
/// Two-band walk sharing the non-constant bands of grover4.
WalkSpec grover4_subwalk();
/// Two-band walk whose only band is the 2-cover band of grover3.
WalkSpec grover3_subwalk();
/// [[0,S,0],[0,0,S],[1,0,0]]
WalkSpec cube_root();
/// [[r S^-1, -sqrt(1-r^2) S^-1], [sqrt(1-r^2) S, r S]]
WalkSpec coined(double r);
/// [[r S, -b S], [conj(b), r]], r^2 + |b|^2 = 1; det of the symbol is e^{ik}.
WalkSpec det_winding_walk(double r, Complex b);
/// 2x2 walk with coin {{a, b}, {c, d}}: a,b move left and c,d move right.
WalkSpec two_by_two(const CMatrix& coin);

/// Shift block diag(S^{a_1},...,S^{a_n}) applied after a unitary coin.
WalkSpec shift_coin(const std::vector<int>& shifts, const CMatrix& coin);

/// Builds a fixture from a name such as "grover4", "coined(0.5)",
/// "det_winding(0.6,0.8)", "constant(-1)", "identity(2)".
WalkSpec by_name(const std::string& name);

std::vector<std::string> names();

}  // namespace qwalk::fixtures
