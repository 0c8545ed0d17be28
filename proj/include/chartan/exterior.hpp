#pragma once

// Small exterior-algebra toolkit over Q^n.
//
// Lambda2 elements are stored as dense antisymmetric matrices (A(i,j) is the
// coefficient of e_i ^ e_j for i < j). Lambda3 elements and alternating
// trilinear forms are dense vectors indexed by increasing triples i<j<k in
// lexicographic order; a form and a vector pair by the plain dot product.

#include "chartan/linalg.hpp"

#include <array>
#include <vector>

namespace chartan {

using Lambda2Vector = RationalMatrix;  // antisymmetric n x n
using Lambda3Vector = RationalVector;  // length C(n,3)
using Lambda3Form = RationalVector;    // length C(n,3), dual basis

inline Eigen::Index triple_count(Eigen::Index n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// All increasing 0-based triples, in the storage order.
std::vector<std::array<int, 3>> increasing_triples(int n);
/// Storage position of the increasing triple (i, j, k).
Eigen::Index triple_index(int n, int i, int j, int k);

/// e_i ^ e_j as an antisymmetric matrix.
Lambda2Vector basis_wedge(int n, int i, int j);
/// x ^ y for vectors x, y.
Lambda2Vector wedge(const RationalVector& x, const RationalVector& y);
/// x ^ a for a vector x and a bivector a.
Lambda3Vector wedge(const RationalVector& x, const Lambda2Vector& a);
/// x ^ y ^ z.
Lambda3Vector wedge(const RationalVector& x, const RationalVector& y, const RationalVector& z);

/// Dual basis form of e_i ^ e_j ^ e_k (any order; sign follows the permutation).
Lambda3Form dual_triple(int n, int i, int j, int k);

/// Lambda^2 of a linear map: image of a under p, where p maps Q^n to Q^m as
/// an m x n matrix.
Lambda2Vector push_forward(const RationalMatrix& p, const Lambda2Vector& a);
/// Lambda^3 of the transpose: the form phi on Q^m pulled back to Q^n.
Lambda3Form pull_back(const RationalMatrix& p, const Lambda3Form& phi);

/// Value of the alternating form on x ^ y ^ z.
Rational evaluate_form(const Lambda3Form& phi, const RationalVector& x, const RationalVector& y,
                       const RationalVector& z);

}  // namespace chartan
