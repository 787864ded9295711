#pragma once

#include "jpl/ordering.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jpl {

using Rational = boost::multiprecision::cpp_rational;

enum class SerialVariant { Column, Row, ReverseColumn, ReverseRow };

struct SerialPerm {
  SerialVariant variant;
  bool operator==(const SerialPerm&) const = default;
};
struct GeneralizedSerial {
  int d;
  bool operator==(const GeneralizedSerial&) const = default;
};
enum class ParallelAnchor { Par, ParPrime };
struct Parallel {
  ParallelAnchor anchor;
  int shift_length;
  bool operator==(const Parallel&) const = default;
};

using OrderingClassLabel = std::variant<SerialPerm, GeneralizedSerial, Parallel>;

/// S(A^[t + tau]) <= gamma S(A^[t]) for all t >= t0.
struct ConvergenceBound {
  double gamma;
  int tau;
  int t0;
};

struct ClassificationRecord {
  PivotOrdering ordering;
  OrderingClassLabel label;
  Certificate certificate;
  ConvergenceBound bound;
};

/// (1,2) first, then the pairs of column 3 in any order, then column 4, ...
bool member_column_wise(const PivotOrdering& o);
/// (n-1,n) first, then the pairs of row n-2 in any order, then row n-3, ...
bool member_row_wise(const PivotOrdering& o);
std::optional<SerialVariant> member_serial_perm(const PivotOrdering& o);

/// Exact one-sweep contraction factor for S^2 under serial orderings.
Rational compute_eta(int n);

PivotOrdering o_par();
PivotOrdering o_par_prime();
/// Maps o_par() onto o_par_prime().
IndexPermutation p_par();

ConvergenceBound bound_for(const OrderingClassLabel& label);
/// Bound valid for every cyclic ordering of four indices.
ConvergenceBound universal_bound();

ClassificationRecord classify(const PivotOrdering& o);
/// All 720 orderings of P_4 in lexicographic order, classified on `jobs` threads.
std::vector<ClassificationRecord> classify_all(unsigned jobs = 1);

std::string variant_name(SerialVariant v);
std::string label_name(const OrderingClassLabel& label);
/// d for generalized serial, the shift length for parallel, 0 otherwise.
int label_parameter(const OrderingClassLabel& label);

/// Where a catalog chain claims to end.
struct Endpoint {
  enum class Kind { Column, Row, ReverseColumn, ReverseRow, Entry, Par, ParPrime };
  Kind kind;
  int entry = 0;

  static constexpr Endpoint column() { return {Kind::Column}; }
  static constexpr Endpoint row() { return {Kind::Row}; }
  static constexpr Endpoint reverse_column() { return {Kind::ReverseColumn}; }
  static constexpr Endpoint reverse_row() { return {Kind::ReverseRow}; }
  static constexpr Endpoint entry_of(int k) { return {Kind::Entry, k}; }
  static constexpr Endpoint par() { return {Kind::Par}; }
  static constexpr Endpoint par_prime() { return {Kind::ParPrime}; }
};

std::string endpoint_name(const Endpoint& e);

struct CatalogEntry {
  int index;
  PivotOrdering ordering;
  Certificate chain;
  Endpoint endpoint;
};

/// The four relabelings used by the catalog chains (index 1..4).
IndexPermutation catalog_permutation(int k);

/// The 120 orderings that start with (1,2), each with its published chain.
const std::vector<CatalogEntry>& reference_catalog();

struct CatalogCheck {
  int index;
  bool replayed = false;
  bool endpoint_ok = false;
  bool group_ok = false;
  /// Minimal d from classify() is at most the chain's shift count; for
  /// parallel entries, the classified shift length equals the chain's.
  bool parameter_ok = false;
  std::string label;
  int chain_parameter = 0;
  int classified_parameter = 0;
  std::string message;

  bool ok() const { return replayed && endpoint_ok && group_ok && parameter_ok; }
};

struct CatalogReport {
  std::vector<CatalogCheck> entries;
  bool covers_c0 = false;
  int column = 0;
  int row = 0;
  int reverse_column = 0;
  int reverse_row = 0;
  int generalized = 0;
  int parallel = 0;

  bool ok() const;
};

CatalogReport verify_catalog();

}  // namespace jpl
