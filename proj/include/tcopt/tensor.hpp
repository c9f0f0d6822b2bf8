// tensor.hpp
// Symmetric order-3 GF(2) tensors, Waring decompositions, basis changes.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tcopt/gf2.hpp"
#include "tcopt/phase_poly.hpp"

namespace tcopt {

using Factor = BitVec;

// Stored dense with full symmetric closure: row(i,j) holds T[i,j,.] and
// T_iij == T_ijj always (true of every Waring-generated tensor). Entry classes
// are (i,i,i) <-> a_i, (i,j,j) <-> b_ij, (i,j,k) <-> c_ijk mod 2.
class SignatureTensor {
public:
    SignatureTensor() = default;
    explicit SignatureTensor(std::size_t n) : n_(n), rows_(n * n, BitVec(n)) {}

    std::size_t n() const { return n_; }

    bool at(std::size_t i, std::size_t j, std::size_t k) const { return rows_[i * n_ + j].get(k); }
    const BitVec& slice_row(std::size_t i, std::size_t j) const { return rows_[i * n_ + j]; }

    // Set the full symmetric orbit of (i,j,k).
    void set_sym(std::size_t i, std::size_t j, std::size_t k);

    // XOR with u (x) u (x) u; u must be nonzero.
    void xor_cube(const Factor& u);

    bool is_zero() const;
    std::size_t weight() const;  // number of set bits in the closed representation
    bool operator==(const SignatureTensor& o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator!=(const SignatureTensor& o) const { return !(*this == o); }

    // Class-canonical entries (i,i,i) / (i,j,j) / (i,j,k), lexicographic.
    std::vector<std::array<std::uint32_t, 3>> entries() const;

    std::size_t distinct_nonzero_slices() const;
    std::size_t flattening_rank() const;  // dim span{slices}; a rank lower bound

    std::uint64_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<BitVec> rows_;

    friend SignatureTensor change_of_basis(const SignatureTensor&, const BitMatrix&);
    friend SignatureTensor permute(const SignatureTensor&, const std::vector<std::size_t>&);
};

SignatureTensor from_multilinear(const MultilinearPhase& p);
SignatureTensor from_decomposition(std::size_t n, const std::vector<Factor>& factors);
SignatureTensor rank_one(const Factor& u);
SignatureTensor subtract_rank_one(const SignatureTensor& t, const Factor& u);
SignatureTensor change_of_basis(const SignatureTensor& t, const BitMatrix& m);
SignatureTensor permute(const SignatureTensor& t, const std::vector<std::size_t>& sigma);

enum class GadgetKind : std::uint8_t { Toffoli, CS };

constexpr std::size_t gadget_span(GadgetKind k) { return k == GadgetKind::Toffoli ? 7 : 3; }

struct GadgetAnnotation {
    GadgetKind kind;
    std::size_t start;
    bool operator==(const GadgetAnnotation& o) const { return kind == o.kind && start == o.start; }
};

struct Decomposition {
    std::size_t n = 0;
    std::vector<Factor> factors;
    std::vector<GadgetAnnotation> gadgets;  // sorted by start, non-overlapping
};

// JSON formats:
//   tensor:        {"n": N, "entries": [[i,j,k], ...]}
//   decomposition: {"n": N, "factors": ["0101...", ...],
//                   "gadgets": [{"kind": "toffoli"|"cs", "start": s}],
//                   "cost": {"t": c, "toffoli": a, "cs": b}}
std::string tensor_to_json(const SignatureTensor& t);
SignatureTensor tensor_from_json(const std::string& text);
std::string decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const std::string& text);

}  // namespace tcopt
