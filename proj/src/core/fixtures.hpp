#pragma once
// Named algebras and modules used by tests, the CLI and the corpus runner.

#include <cstdint>
#include <string>
#include <vector>

#include "module.hpp"

namespace homct {

AlgebraPtr algebra_a1();  // F_2[x]/(x^2)
AlgebraPtr algebra_a2();  // F_2[x,y]/(x^2,xy,y^2)
AlgebraPtr algebra_a3();  // F_2[x,y]/(x^2,y^2)
AlgebraPtr algebra_a4();  // F_3[x]/(x^3)
AlgebraPtr algebra_by_name(const std::string& name);

/// The simple module of a local algebra.
FdModule trivial_module(const AlgebraPtr& a, Side side);
/// R / (R-span of the given algebra elements), for commutative R.
FdModule cyclic_quotient(const AlgebraPtr& a, const std::vector<Vector>& relations, Side side);
/// Basis vector of the algebra by name ("x", "xy", ...).
Vector element(const AlgebraPtr& a, const std::string& name);

struct CorpusEntry {
    std::string name;
    FdModule module;
    bool projective = false;
    bool injective = false;
};

/// Deterministic corpus of left modules over `a`: regular, dual regular,
/// simples, random cyclic quotients, random submodules and sums.
std::vector<CorpusEntry> module_corpus(const AlgebraPtr& a, Side side, std::size_t count, std::uint64_t seed,
                                       std::size_t max_dim = 8);

}  // namespace homct
