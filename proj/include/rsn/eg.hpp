// Edelman-Greene correspondence between staircase standard tableaux and
// sorting networks.
//
// Insertion (Coxeter-Knuth row insertion of letter x into a row R):
//   * R contains both x and x+1: R is unchanged and x+1 is inserted into
//     the next row;
//   * otherwise the smallest entry y > x is replaced by x and y moves on,
//     or x is appended when no such y exists.
// The recording tableau Q stores the step at which each cell was created.
// For a sorting network the insertion tableau is always the canonical
// staircase P(r, c) = r + c - 1, so Q alone determines the word.
//
// Word orientation: letters are produced and consumed in insertion order,
// and that order is stored as (k_1, ..., k_N).

#ifndef RSN_EG_HPP
#define RSN_EG_HPP

#include <vector>

#include "rsn/core.hpp"
#include "rsn/tableau.hpp"

namespace rsn {

struct EGPair {
    std::vector<std::vector<Letter>> insertion;  ///< P, rows top to bottom
    StaircaseTableau recording;                  ///< Q
};

/// Canonical staircase insertion tableau for n particles.
std::vector<std::vector<Letter>> canonical_insertion_tableau(int n);

/// Throws ValidationError if the word is not reduced for the reverse
/// permutation (detected as a non-canonical insertion tableau).
EGPair eg_insert(const SwapSequence& word);

/// Reverse Coxeter-Knuth deletion from the canonical tableau, driven by Q.
/// Throws ValidationError if Q is not a standard tableau. An inconsistent
/// intermediate state throws std::logic_error (an implementation bug).
SortingNetwork eg_inverse(const StaircaseTableau& recording);

}  // namespace rsn

#endif  // RSN_EG_HPP
