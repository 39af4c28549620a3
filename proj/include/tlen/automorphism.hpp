#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlen/errors.hpp"
#include "tlen/word.hpp"

namespace tlen {

// Endomorphism of F_n given by generator images; most operations require it
// to actually be an automorphism (nielsen_decompose certifies that).
// Value type, safe to share across threads once built.
struct Automorphism {
  int rank = 0;
  std::vector<ReducedWord> images;  // images[i-1] = phi(x_i)

  static Automorphism identity(int n);
  size_t total_image_length() const;
  bool operator==(const Automorphism&) const = default;
};

// Elementary Nielsen generators.
//   Perm(i,j):   x_i <-> x_j
//   Inv(i):      x_i -> x_i^-1
//   Twist(i,j):  x_i -> x_i x_j          (TwistInv is its formal inverse)
struct GenLabel {
  enum Kind : uint8_t { Perm, Inv, Twist, TwistInv } kind;
  int i = 0, j = 0;

  GenLabel inverse() const;
  std::string text() const;
  bool operator==(const GenLabel&) const = default;
};

using GeneratorWord = std::vector<GenLabel>;

Automorphism label_automorphism(const GenLabel& g, int n);
// evaluate({g1,...,gm}) = g1 o g2 o ... o gm
Automorphism evaluate(const GeneratorWord& gw, int n);

ReducedWord apply(const Automorphism& phi, const ReducedWord& w);
CyclicWord apply_cyclic(const Automorphism& phi, const CyclicWord& c);

// compose(phi, psi) = phi o psi, so apply(compose(phi,psi), w) = apply(phi, apply(psi, w)).
Automorphism compose(const Automorphism& phi, const Automorphism& psi);

Automorphism invert_automorphism(const Automorphism& phi);  // throws NotAnAutomorphism

// Writes phi as a product of elementary generators by greedy Nielsen
// reduction of the image tuple (steepest total-length descent, ties broken
// by the least (move-type, i, j, sign); a bounded same-length plateau search
// unsticks tuples that are length-reduced but not Nielsen-reduced).
// Guarantees evaluate(result, n) == phi. Throws NotAnAutomorphism.
GeneratorWord nielsen_decompose(const Automorphism& phi);

// Standard generating set Y of Aut(F_n): all Perm(i,j) i<j, all Inv(i),
// all Twist(i,j) i != j.  n >= 2.
struct LabeledAutomorphism {
  GenLabel label;
  Automorphism aut;
};
std::vector<LabeledAutomorphism> generator_set(int n);
// Y plus formal inverses of the twists (perms/invs are involutions).
std::vector<LabeledAutomorphism> symmetrized_generator_set(int n);

// Canonical representative of the outer class [phi]: conjugate the image
// tuple by the w minimizing the total conjugated length; among minimizers
// (a connected plateau in the tree) take the lexicographically least tuple.
// The plateau walk is budget-capped; past the cap the result is still a
// minimum-length representative, chosen deterministically, but two members
// of the same class may then canonicalize differently.  Within budget the
// representative is a true class invariant.
struct OuterClass {
  int rank = 0;
  std::vector<ReducedWord> images;

  bool operator==(const OuterClass&) const = default;
  Automorphism representative() const { return Automorphism{rank, images}; }
  std::string key() const;  // compact byte key for hashing/dedup
};

OuterClass outer_canonical(const Automorphism& phi, size_t plateau_budget = 1000000);
bool outer_equal(const Automorphism& phi, const Automorphism& psi);

// phi in Aut(F_n) mapped to Out(F_{n+1}) by fixing x_{n+1}; injective, so
// distinct automorphisms (inner ones included) stay distinct.
OuterClass embed_aut_to_out(const Automorphism& phi);

// Small dense integer matrix, row-major.
struct IntMatrix {
  int n = 0;
  std::vector<int64_t> a;  // a[r*n + c]

  static IntMatrix identity(int n);
  int64_t& at(int r, int c) { return a[r * n + c]; }
  int64_t at(int r, int c) const { return a[r * n + c]; }
  bool operator==(const IntMatrix&) const = default;
};

IntMatrix mul(const IntMatrix& A, const IntMatrix& B);           // overflow-checked
IntMatrix mat_pow(const IntMatrix& A, int k);
int64_t det(const IntMatrix& A);                                 // fraction-free elimination
bool is_zero(const IntMatrix& A);
IntMatrix sub_identity(const IntMatrix& A, int64_t scale = 1);   // A - scale*I
bool is_nilpotent(const IntMatrix& A);                           // A^n == 0

// Column i = abelianized image of x_i (entry (j,i) counts x_j in phi(x_i)).
// abelianization(compose(phi,psi)) = abelianization(phi) * abelianization(psi).
IntMatrix abelianization_matrix(const Automorphism& phi);

}  // namespace tlen
