#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nmlkit/graph.hpp"
#include "nmlkit/theory.hpp"

namespace nmlkit {

/// Size n and the number of edge-nodes between each pair of mains. Pairs
/// (i, j) with 0 <= i < j < n missing from `lengths` get `k`.
struct PseudoCliqueSpec {
  int n = 2;
  int k = 0;
  std::map<std::pair<int, int>, int> lengths;

  int length(int i, int j) const;
  /// Throws InvalidInput unless n >= 2 and every length is >= 0.
  void validate() const;
};

/// Mains are vertices 0..n-1 (labelled "1".."n"); the edge-nodes of pair
/// (i, j) follow in (i, j, r) order, described "d<i>_<j>^<r>" (1-based).
Graph gen_pseudo_clique(const PseudoCliqueSpec& spec);
Graph gen_pseudo_clique(int n, int k);

enum class DlLowerVariant { Printed, Symmetric };
DlLowerVariant dl_lower_variant_from_name(std::string_view name);

/// W empty. Printed: x_i : y_j / false for 1 <= i <= j <= n. Symmetric:
/// x_i : x_j / false for i < j. Rules in (i, j) order.
DefaultTheory gen_dl_lower(int n, DlLowerVariant variant = DlLowerVariant::Printed);

/// x_i | x_j for 1 <= i <= j <= k, in (i, j) order.
AeTheory gen_ael_lower(int k);

enum class ImpLowerKind { Xor3, CnfDnf };
ImpLowerKind imp_lower_kind_from_name(std::string_view name);

/// Xor3: F = X3(x_i, x_i+1, x_i+2), G = X3(x_1, x_2, x_n).
/// CnfDnf: F = x_i | x_j for i <= j, G = one DNF over consecutive pairs.
ImplicationInstance gen_imp_lower(ImpLowerKind kind, int n);

/// Implication chain x1, x1 -> x2, ..., x_{m-1} -> x_m.
std::vector<Formula> gen_chain(int m);

using Instance = std::variant<DefaultTheory, AeTheory, ImplicationInstance>;

// Syntactic classes of the lower-bound families:
//   dl_literals       W empty, every rule part a literal or a constant
//   dl_propositions   W at most one proposition, rule parts propositions or false
//   ael_disjunctions  disjunctions of propositions and L-prefixed propositions
//   imp_xor3          every formula built from X3 over variables only
//   imp_cnf_dnf       premises monotone 2-CNF, conclusions DNF
std::vector<std::string> class_names();

struct ClassCheck {
  bool member = false;
  std::string reason;  // first offending item when not a member
};

/// Throws InvalidInput for an unknown class name.
ClassCheck check_class(const Instance& instance, std::string_view class_name);

}  // namespace nmlkit
