#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "casmc/closure.hpp"
#include "casmc/formula.hpp"
#include "casmc/pointset.hpp"

namespace casmc {

// A closure space whose points carry atomic propositions.
class SpatialModel {
public:
    SpatialModel(ClosureSpace space, std::vector<std::string> atoms);

    const ClosureSpace& space() const { return space_; }
    const std::vector<std::string>& atoms() const { return atoms_; }

    bool has_atom(const std::string& name) const { return atom_index_.count(name) != 0; }
    std::size_t atom_index(const std::string& name) const;

    const PointSet& atom_set(std::size_t idx) const { return atom_sets_[idx]; }
    const PointSet& atom_set(const std::string& name) const { return atom_sets_[atom_index(name)]; }

    void assign(PointId p, const std::string& atom) { atom_sets_[atom_index(atom)].add(p); }
    void assign(PointId p, std::size_t atom_idx) { atom_sets_.at(atom_idx).add(p); }

private:
    ClosureSpace space_;
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, std::size_t> atom_index_;
    std::vector<PointSet> atom_sets_;
};

struct EvalOptions {
    // Evaluate S via the exhaustive subset oracle instead of the fixpoint.
    bool oracle_surrounded = false;
    std::size_t bruteforce_cap = 20;
};

// Satisfaction set {x | x ⊨ f}; f may use the full spatial grammar
// including derived operators, but no temporal ones.
PointSet sat_set(const SpatialModel& model, const FormulaPtr& f, const EvalOptions& opts = {});

// {x | ∃A ⊆ X : x ∈ A, A ⊆ phi, C(A)\A ⊆ psi}, by linear-time fixpoint.
PointSet surrounded_sat(const ClosureSpace& space, const PointSet& phi, const PointSet& psi);

// Same set by explicit enumeration of all A ⊆ phi; 2^|phi| work, so the
// size of phi is capped. Testing oracle only.
PointSet surrounded_bruteforce(const ClosureSpace& space, const PointSet& phi, const PointSet& psi,
                               std::size_t cap = 20);

// Least fixpoint of P0 = psi ∩ C(phi), P_{k+1} = P_k ∪ (psi ∩ C(P_k)).
PointSet propagate_sat(const ClosureSpace& space, const PointSet& phi, const PointSet& psi);

// Backward flood from psi through phi points: x is in the result iff
// x ∈ psi, or x ∈ phi and some closure path through phi points ends in psi.
PointSet reach_sat(const ClosureSpace& space, const PointSet& phi, const PointSet& psi);

}  // namespace casmc
