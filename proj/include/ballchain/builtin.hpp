#pragma once

// Named example registry: the operators, maps, words and fields exercised by
// the verification suite, the CLI --builtin flags and the test binaries.

#include <string>
#include <vector>

#include "ballchain/automorphism.hpp"
#include "ballchain/loewner.hpp"
#include "ballchain/operator_analysis.hpp"

namespace ballchain::builtin {

std::vector<std::string> operator_names();
std::vector<std::string> map_names();
std::vector<std::string> word_names();
std::vector<std::string> field_names();

/// Golden-ratio upper-triangular operator [[1-2a, 1],[0, 1/2-2a]] with
/// a = (1-sqrt 5)/4: m = (1+sqrt 5)/4, k_+ = (1+sqrt 5)/2 = 2m, nonresonant.
Operator golden_operator();

Operator get_operator(const std::string& name);
PolyMap get_map(const std::string& name);
AutomorphismWord get_word(const std::string& name);
HerglotzField get_field(const std::string& name);

/// f = (z1 + a z2^2, z2) as a single-shear normalized word.
AutomorphismWord shear_word(cdouble a);

std::vector<AutomorphismWord> repeat_candidates(const AutomorphismWord& w, int count);

/// Deterministic coefficient perturbations of every shear factor, scale-sized.
std::vector<AutomorphismWord> perturbed_candidates(const AutomorphismWord& w, double scale,
                                                   int count, std::uint64_t seed);

/// Degree truncations of the shear polynomials, re-closed as shear words:
/// entry i keeps terms of degree <= 2 + i, the last entries repeat the full
/// word.  Linear factors pass through unchanged.
std::vector<AutomorphismWord> truncated_candidates(const AutomorphismWord& w, int count);

}  // namespace ballchain::builtin
