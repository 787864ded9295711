#include "jpl/classification.hpp"

#include "jpl/errors.hpp"
#include "jpl/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

namespace jpl {

namespace {

// Groups pairs by their larger index (columns) or smaller index (rows) and
// checks that the groups appear in the template's order.
bool matches_serial_template(const PivotOrdering& o, bool by_column) {
  const int n = o.n();
  int k = 0;
  for (int g = 0; g < n - 1; ++g) {
    // Column g+1 (one-based g+2) has g+1 pairs; row n-2-g likewise.
    const int key = by_column ? g + 1 : n - 2 - g;
    for (int m = 0; m <= g; ++m, ++k) {
      const PivotPair& p = o[k];
      if ((by_column ? p.s : p.r) != key) return false;
    }
  }
  return true;
}

double eta4() { return static_cast<double>(compute_eta(4)); }

}  // namespace

bool member_column_wise(const PivotOrdering& o) { return matches_serial_template(o, true); }

bool member_row_wise(const PivotOrdering& o) { return matches_serial_template(o, false); }

std::optional<SerialVariant> member_serial_perm(const PivotOrdering& o) {
  if (member_column_wise(o)) return SerialVariant::Column;
  if (member_row_wise(o)) return SerialVariant::Row;
  const PivotOrdering r = reverse(o);
  if (member_column_wise(r)) return SerialVariant::ReverseColumn;
  if (member_row_wise(r)) return SerialVariant::ReverseRow;
  return std::nullopt;
}

Rational compute_eta(int n) {
  if (n < 2) throw std::invalid_argument("compute_eta: n must be at least 2");
  Rational eta = 0;
  for (int m = 3; m <= n; ++m) {
    const Rational p1 = Rational(1, boost::multiprecision::cpp_int(1) << (m - 1));  // 2^{1-m}
    const Rational p2 = p1 * 2;                                                       // 2^{2-m}
    const Rational first = 1 - p1;
    const Rational second = 1 - p2 * (1 - eta) / (p2 + (m - 2) * eta);
    eta = std::max(first, second);
  }
  return eta;
}

PivotOrdering o_par() { return parse_ordering("1 3, 2 4, 1 4, 2 3, 1 2, 3 4"); }

PivotOrdering o_par_prime() { return parse_ordering("1 4, 2 3, 1 3, 2 4, 1 2, 3 4"); }

IndexPermutation p_par() { return IndexPermutation({0, 1, 3, 2}); }

ConvergenceBound bound_for(const OrderingClassLabel& label) {
  const double serial_gamma = std::sqrt(eta4());
  return std::visit(
      [&](const auto& l) -> ConvergenceBound {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SerialPerm>) return {serial_gamma, 1, 0};
        else if constexpr (std::is_same_v<T, GeneralizedSerial>) return {serial_gamma, l.d + 1, 0};
        else return universal_bound();
      },
      label);
}

ConvergenceBound universal_bound() { return {1.0 - 1e-5, 3, 1}; }

ClassificationRecord classify(const PivotOrdering& o) {
  if (o.n() != 4) throw std::invalid_argument("classify: only n = 4 is supported");

  if (const auto v = member_serial_perm(o)) {
    const OrderingClassLabel label = SerialPerm{*v};
    return {o, label, Certificate::trivial(o), bound_for(label)};
  }

  const auto is_serial = [](const PivotOrdering& x) { return member_serial_perm(x).has_value(); };
  if (auto cert = relate_into(o, is_serial, Move::Transpose | Move::Shift | Move::Permute)) {
    const OrderingClassLabel label = GeneralizedSerial{cert->shift_count()};
    return {o, label, std::move(*cert), bound_for(label)};
  }

  const std::pair<ParallelAnchor, PivotOrdering> anchors[] = {{ParallelAnchor::Par, o_par()},
                                                              {ParallelAnchor::ParPrime, o_par_prime()}};
  for (const auto& [anchor, target] : anchors) {
    if (auto cert = relate(o, target, Move::Transpose | Move::Shift)) {
      const OrderingClassLabel label = Parallel{anchor, cert->total_shift()};
      return {o, label, std::move(*cert), bound_for(label)};
    }
  }
  throw ClassificationFailure("classification failure: no class accepts " + format_ordering(o));
}

std::vector<ClassificationRecord> classify_all(unsigned jobs) {
  const std::vector<PivotOrdering> all = enumerate_orderings(4);
  std::vector<std::optional<ClassificationRecord>> slots(all.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(all.size())));
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t k = w; k < all.size(); k += jobs) slots[k] = classify(all[k]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<ClassificationRecord> out;
  out.reserve(all.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::string variant_name(SerialVariant v) {
  switch (v) {
    case SerialVariant::Column: return "column";
    case SerialVariant::Row: return "row";
    case SerialVariant::ReverseColumn: return "reverse-column";
    case SerialVariant::ReverseRow: return "reverse-row";
  }
  return "?";
}

std::string label_name(const OrderingClassLabel& label) {
  return std::visit(
      [](const auto& l) -> std::string {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SerialPerm>) return "serial-perm(" + variant_name(l.variant) + ")";
        else if constexpr (std::is_same_v<T, GeneralizedSerial>) return "generalized-serial(d=" + std::to_string(l.d) + ")";
        else
          return std::string("parallel(") + (l.anchor == ParallelAnchor::Par ? "par" : "par'") +
                 ",shift=" + std::to_string(l.shift_length) + ")";
      },
      label);
}

int label_parameter(const OrderingClassLabel& label) {
  if (const auto* g = std::get_if<GeneralizedSerial>(&label)) return g->d;
  if (const auto* p = std::get_if<Parallel>(&label)) return p->shift_length;
  return 0;
}

std::string endpoint_name(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::Column: return "column";
    case Endpoint::Kind::Row: return "row";
    case Endpoint::Kind::ReverseColumn: return "reverse-column";
    case Endpoint::Kind::ReverseRow: return "reverse-row";
    case Endpoint::Kind::Entry: return "entry " + std::to_string(e.entry);
    case Endpoint::Kind::Par: return "par";
    case Endpoint::Kind::ParPrime: return "par'";
  }
  return "?";
}

IndexPermutation catalog_permutation(int k) {
  switch (k) {
    case 1: return IndexPermutation({2, 0, 1, 3});
    case 2: return IndexPermutation({0, 2, 1, 3});
    case 3: return IndexPermutation({2, 1, 0, 3});
    case 4: return IndexPermutation({0, 2, 3, 1});
    default: throw std::out_of_range("catalog permutation index must be 1..4");
  }
}

namespace {

struct RawEntry {
  int index;
  const char* ordering;
  // Space-separated tokens: qK relabel, sL shift, tR transpose of the
  // one-based positions R and R+1.
  const char* chain;
  Endpoint endpoint;
};

// clang-format off
const RawEntry kRawCatalog[] = {
    {1, "1 2, 1 3, 2 3, 1 4, 2 4, 3 4", "", Endpoint::column()},
    {2, "1 2, 1 3, 2 3, 1 4, 3 4, 2 4", "", Endpoint::column()},
    {3, "1 2, 1 3, 2 3, 2 4, 1 4, 3 4", "", Endpoint::column()},
    {4, "1 2, 1 3, 2 3, 2 4, 3 4, 1 4", "", Endpoint::column()},
    {5, "1 2, 1 3, 2 3, 3 4, 1 4, 2 4", "", Endpoint::column()},
    {6, "1 2, 1 3, 2 3, 3 4, 2 4, 1 4", "", Endpoint::column()},
    {7, "1 2, 2 3, 1 3, 1 4, 2 4, 3 4", "", Endpoint::column()},
    {8, "1 2, 2 3, 1 3, 1 4, 3 4, 2 4", "", Endpoint::column()},
    {9, "1 2, 2 3, 1 3, 2 4, 1 4, 3 4", "", Endpoint::column()},
    {10, "1 2, 2 3, 1 3, 2 4, 3 4, 1 4", "", Endpoint::column()},
    {11, "1 2, 2 3, 1 3, 3 4, 1 4, 2 4", "", Endpoint::column()},
    {12, "1 2, 2 3, 1 3, 3 4, 2 4, 1 4", "", Endpoint::column()},
    {13, "1 2, 1 3, 1 4, 2 3, 2 4, 3 4", "", Endpoint::reverse_row()},
    {14, "1 2, 1 3, 1 4, 2 4, 2 3, 3 4", "", Endpoint::reverse_row()},
    {15, "1 2, 1 4, 1 3, 2 3, 2 4, 3 4", "", Endpoint::reverse_row()},
    {16, "1 2, 1 4, 1 3, 2 4, 2 3, 3 4", "", Endpoint::reverse_row()},
    {17, "1 2, 1 3, 1 4, 2 3, 3 4, 2 4", "t3", Endpoint::entry_of(2)},
    {18, "1 2, 2 3, 2 4, 1 3, 1 4, 3 4", "t3", Endpoint::entry_of(9)},
    {19, "1 2, 2 3, 2 4, 1 3, 3 4, 1 4", "t3", Endpoint::entry_of(10)},
    {20, "1 2, 1 4, 2 4, 1 3, 2 3, 3 4", "t3", Endpoint::entry_of(16)},
    {21, "1 2, 1 3, 1 4, 3 4, 2 3, 2 4", "s3", Endpoint::row()},
    {22, "1 2, 1 3, 1 4, 3 4, 2 4, 2 3", "s3", Endpoint::row()},
    {23, "1 2, 1 3, 3 4, 2 3, 2 4, 1 4", "s2", Endpoint::row()},
    {24, "1 2, 1 3, 3 4, 2 4, 2 3, 1 4", "s2", Endpoint::row()},
    {25, "1 2, 1 4, 1 3, 3 4, 2 3, 2 4", "s3", Endpoint::row()},
    {26, "1 2, 1 4, 1 3, 3 4, 2 4, 2 3", "s3", Endpoint::row()},
    {27, "1 2, 1 4, 3 4, 2 3, 2 4, 1 3", "s2", Endpoint::row()},
    {28, "1 2, 1 4, 3 4, 2 4, 2 3, 1 3", "s2", Endpoint::row()},
    {29, "1 2, 3 4, 2 3, 2 4, 1 3, 1 4", "s1", Endpoint::row()},
    {30, "1 2, 3 4, 2 3, 2 4, 1 4, 1 3", "s1", Endpoint::row()},
    {31, "1 2, 3 4, 2 4, 2 3, 1 3, 1 4", "s1", Endpoint::row()},
    {32, "1 2, 3 4, 2 4, 2 3, 1 4, 1 3", "s1", Endpoint::row()},
    {33, "1 2, 1 4, 2 4, 3 4, 1 3, 2 3", "s1", Endpoint::reverse_column()},
    {34, "1 2, 1 4, 2 4, 3 4, 2 3, 1 3", "s1", Endpoint::reverse_column()},
    {35, "1 2, 1 4, 3 4, 2 4, 1 3, 2 3", "s1", Endpoint::reverse_column()},
    {36, "1 2, 2 4, 1 4, 3 4, 1 3, 2 3", "s1", Endpoint::reverse_column()},
    {37, "1 2, 2 4, 1 4, 3 4, 2 3, 1 3", "s1", Endpoint::reverse_column()},
    {38, "1 2, 2 4, 3 4, 1 4, 1 3, 2 3", "s1", Endpoint::reverse_column()},
    {39, "1 2, 2 4, 3 4, 1 4, 2 3, 1 3", "s1", Endpoint::reverse_column()},
    {40, "1 2, 3 4, 1 4, 2 4, 1 3, 2 3", "s1", Endpoint::reverse_column()},
    {41, "1 2, 3 4, 1 4, 2 4, 2 3, 1 3", "s1", Endpoint::reverse_column()},
    {42, "1 2, 3 4, 2 4, 1 4, 1 3, 2 3", "s1", Endpoint::reverse_column()},
    {43, "1 2, 3 4, 2 4, 1 4, 2 3, 1 3", "s1", Endpoint::reverse_column()},
    {44, "1 2, 1 3, 2 4, 2 3, 3 4, 1 4", "s5", Endpoint::reverse_row()},
    {45, "1 2, 1 4, 2 3, 2 4, 3 4, 1 3", "s5", Endpoint::reverse_row()},
    {46, "1 2, 1 4, 2 4, 2 3, 3 4, 1 3", "s5", Endpoint::reverse_row()},
    {47, "1 2, 2 3, 2 4, 3 4, 1 3, 1 4", "s4", Endpoint::reverse_row()},
    {48, "1 2, 2 3, 2 4, 3 4, 1 4, 1 3", "s4", Endpoint::reverse_row()},
    {49, "1 2, 2 4, 2 3, 3 4, 1 3, 1 4", "s4", Endpoint::reverse_row()},
    {50, "1 2, 2 4, 2 3, 3 4, 1 4, 1 3", "s4", Endpoint::reverse_row()},
    {51, "1 2, 3 4, 1 3, 2 3, 1 4, 2 4", "t1 s1", Endpoint::entry_of(1)},
    {52, "1 2, 3 4, 1 3, 2 3, 2 4, 1 4", "t1 s1", Endpoint::entry_of(3)},
    {53, "1 2, 3 4, 2 3, 1 3, 1 4, 2 4", "t1 s1", Endpoint::entry_of(7)},
    {54, "1 2, 3 4, 2 3, 1 3, 2 4, 1 4", "t1 s1", Endpoint::entry_of(9)},
    {55, "1 2, 1 3, 3 4, 2 4, 1 4, 2 3", "t5 s2", Endpoint::row()},
    {56, "1 2, 1 4, 3 4, 2 3, 1 3, 2 4", "t5 s2", Endpoint::row()},
    {57, "1 2, 1 4, 3 4, 1 3, 2 4, 2 3", "t4 s1", Endpoint::reverse_column()},
    {58, "1 2, 2 4, 3 4, 2 3, 1 4, 1 3", "t4 s1", Endpoint::reverse_column()},
    {59, "1 2, 2 3, 1 4, 2 4, 3 4, 1 3", "t2 s5", Endpoint::reverse_row()},
    {60, "1 2, 2 4, 1 3, 2 3, 3 4, 1 4", "t2 s5", Endpoint::reverse_row()},
    {61, "1 2, 3 4, 1 3, 1 4, 2 3, 2 4", "t1 s1", Endpoint::entry_of(13)},
    {62, "1 2, 3 4, 1 3, 1 4, 2 4, 2 3", "t1 s1", Endpoint::entry_of(14)},
    {63, "1 2, 3 4, 1 4, 1 3, 2 3, 2 4", "t1 s1", Endpoint::entry_of(15)},
    {64, "1 2, 3 4, 1 4, 1 3, 2 4, 2 3", "t1 s1", Endpoint::entry_of(16)},
    {65, "1 2, 1 3, 1 4, 2 4, 3 4, 2 3", "q1 s5", Endpoint::entry_of(5)},
    {66, "1 2, 1 3, 2 4, 1 4, 3 4, 2 3", "q1 s5", Endpoint::entry_of(2)},
    {67, "1 2, 1 3, 2 4, 3 4, 1 4, 2 3", "q1 s5", Endpoint::entry_of(1)},
    {68, "1 2, 1 3, 2 4, 3 4, 2 3, 1 4", "q1 t5 s5", Endpoint::entry_of(1)},
    {69, "1 2, 2 4, 1 3, 1 4, 3 4, 2 3", "q1 t2 s5", Endpoint::entry_of(2)},
    {70, "1 2, 2 4, 1 3, 3 4, 1 4, 2 3", "q1 t2 s5", Endpoint::entry_of(1)},
    {71, "1 2, 2 4, 1 3, 3 4, 2 3, 1 4", "q1 t2 t5 s5", Endpoint::entry_of(1)},
    {72, "1 2, 1 4, 2 3, 1 3, 3 4, 2 4", "q1 t2 s2", Endpoint::row()},
    {73, "1 2, 1 4, 3 4, 1 3, 2 3, 2 4", "q1 s1", Endpoint::row()},
    {74, "1 2, 2 3, 1 4, 1 3, 3 4, 2 4", "q1 s2", Endpoint::row()},
    {75, "1 2, 2 3, 2 4, 1 4, 1 3, 3 4", "q1 s3", Endpoint::row()},
    {76, "1 2, 2 4, 1 4, 1 3, 3 4, 2 3", "q1 s2", Endpoint::row()},
    {77, "1 2, 2 4, 1 4, 2 3, 3 4, 1 3", "q1 t3 s3", Endpoint::row()},
    {78, "1 2, 2 4, 2 3, 1 4, 3 4, 1 3", "q1 s3", Endpoint::row()},
    {79, "1 2, 1 3, 3 4, 1 4, 2 3, 2 4", "q1 s4", Endpoint::entry_of(15)},
    {80, "1 2, 1 3, 3 4, 1 4, 2 4, 2 3", "q1 s4", Endpoint::reverse_row()},
    {81, "1 2, 2 3, 3 4, 1 3, 1 4, 2 4", "q1 s5", Endpoint::reverse_row()},
    {82, "1 2, 2 4, 2 3, 1 3, 3 4, 1 4", "q1", Endpoint::reverse_row()},
    {83, "1 2, 2 4, 3 4, 1 3, 1 4, 2 3", "q1 s5", Endpoint::entry_of(14)},
    {84, "1 2, 2 4, 3 4, 1 3, 2 3, 1 4", "q1 t5 s5", Endpoint::entry_of(14)},
    {85, "1 2, 2 3, 1 4, 3 4, 1 3, 2 4", "q2 t5 s5", Endpoint::entry_of(1)},
    {86, "1 2, 2 3, 1 4, 3 4, 2 4, 1 3", "q2 s5", Endpoint::entry_of(1)},
    {87, "1 2, 1 4, 1 3, 2 4, 3 4, 2 3", "q2 s3", Endpoint::row()},
    {88, "1 2, 1 4, 2 4, 1 3, 3 4, 2 3", "q2 t3 s3", Endpoint::row()},
    {89, "1 2, 2 4, 3 4, 2 3, 1 3, 1 4", "q2 s1", Endpoint::row()},
    {90, "1 2, 1 4, 1 3, 2 3, 3 4, 2 4", "q2", Endpoint::reverse_row()},
    {91, "1 2, 1 4, 2 3, 3 4, 1 3, 2 4", "q2 t5 s5", Endpoint::entry_of(13)},
    {92, "1 2, 1 4, 2 3, 3 4, 2 4, 1 3", "q2 s5", Endpoint::entry_of(13)},
    {93, "1 2, 2 3, 3 4, 1 3, 2 4, 1 4", "q2 t4 s4", Endpoint::entry_of(15)},
    {94, "1 2, 2 3, 3 4, 2 4, 1 3, 1 4", "q2 s4", Endpoint::entry_of(15)},
    {95, "1 2, 1 4, 2 4, 2 3, 1 3, 3 4", "q3 s3 t3", Endpoint::entry_of(2)},
    {96, "1 2, 1 3, 3 4, 2 3, 1 4, 2 4", "q3 s4", Endpoint::row()},
    {97, "1 2, 2 3, 2 4, 1 4, 3 4, 1 3", "q3 s2", Endpoint::reverse_column()},
    {98, "1 2, 2 3, 3 4, 1 4, 1 3, 2 4", "q3 t5 s2", Endpoint::reverse_column()},
    {99, "1 2, 2 3, 3 4, 1 4, 2 4, 1 3", "q3 s2", Endpoint::reverse_column()},
    {100, "1 2, 2 3, 3 4, 2 4, 1 4, 1 3", "q3 s2", Endpoint::reverse_column()},
    {101, "1 2, 2 4, 1 4, 1 3, 2 3, 3 4", "q3 s3", Endpoint::reverse_row()},
    {102, "1 2, 2 4, 1 4, 2 3, 1 3, 3 4", "q3 s3", Endpoint::entry_of(13)},
    {103, "1 2, 2 4, 2 3, 1 4, 1 3, 3 4", "q3 t3 s3", Endpoint::entry_of(13)},
    {104, "1 2, 2 4, 2 3, 1 3, 1 4, 3 4", "q4 s3 t3", Endpoint::reverse_row()},
    {105, "1 2, 3 4, 1 3, 2 4, 1 4, 2 3", "s2", Endpoint::par()},
    {106, "1 2, 1 3, 2 4, 1 4, 2 3, 3 4", "s1 t5", Endpoint::par()},
    {107, "1 2, 1 3, 2 4, 2 3, 1 4, 3 4", "s1 t3 t5", Endpoint::par()},
    {108, "1 2, 2 4, 1 3, 1 4, 2 3, 3 4", "s1 t1 t5", Endpoint::par()},
    {109, "1 2, 2 4, 1 3, 2 3, 1 4, 3 4", "s1 t1 t3 t5", Endpoint::par()},
    {110, "1 2, 3 4, 1 3, 2 4, 2 3, 1 4", "s2 t3", Endpoint::par()},
    {111, "1 2, 3 4, 2 4, 1 3, 1 4, 2 3", "s2 t1", Endpoint::par()},
    {112, "1 2, 3 4, 2 4, 1 3, 2 3, 1 4", "s2 t1 t3", Endpoint::par()},
    {113, "1 2, 1 4, 2 3, 1 3, 2 4, 3 4", "s1 t5", Endpoint::par_prime()},
    {114, "1 2, 1 4, 2 3, 2 4, 1 3, 3 4", "s1 t3 t5", Endpoint::par_prime()},
    {115, "1 2, 2 3, 1 4, 1 3, 2 4, 3 4", "s1 t1 t5", Endpoint::par_prime()},
    {116, "1 2, 2 3, 1 4, 2 4, 1 3, 3 4", "s1 t1 t3 t5", Endpoint::par_prime()},
    {117, "1 2, 3 4, 1 4, 2 3, 1 3, 2 4", "s2", Endpoint::par_prime()},
    {118, "1 2, 3 4, 1 4, 2 3, 2 4, 1 3", "s2 t3", Endpoint::par_prime()},
    {119, "1 2, 3 4, 2 3, 1 4, 1 3, 2 4", "s2 t1", Endpoint::par_prime()},
    {120, "1 2, 3 4, 2 3, 1 4, 2 4, 1 3", "s2 t1 t3", Endpoint::par_prime()},
};
// clang-format on

Certificate build_chain(const PivotOrdering& source, const std::string& chain) {
  std::istringstream in(chain);
  std::string tok;
  std::vector<RelationStep> steps;
  PivotOrdering cur = source;
  while (in >> tok) {
    const int v = std::stoi(tok.substr(1));
    switch (tok[0]) {
      case 'q': steps.emplace_back(Permute{catalog_permutation(v)}); break;
      case 's': steps.emplace_back(CyclicShift{v}); break;
      case 't': steps.emplace_back(AdjacentTranspose{v - 1}); break;
      default: throw std::logic_error("catalog: bad chain token " + tok);
    }
    cur = apply_step(cur, steps.back());
  }
  return Certificate{source, std::move(steps), cur};
}

bool endpoint_holds(const Endpoint& e, const PivotOrdering& o, const std::vector<CatalogEntry>& catalog) {
  switch (e.kind) {
    case Endpoint::Kind::Column: return member_column_wise(o);
    case Endpoint::Kind::Row: return member_row_wise(o);
    case Endpoint::Kind::ReverseColumn: return member_column_wise(reverse(o));
    case Endpoint::Kind::ReverseRow: return member_row_wise(reverse(o));
    case Endpoint::Kind::Entry:
      return e.entry >= 1 && e.entry <= static_cast<int>(catalog.size()) &&
             catalog[static_cast<std::size_t>(e.entry) - 1].ordering == o;
    case Endpoint::Kind::Par: return o == o_par();
    case Endpoint::Kind::ParPrime: return o == o_par_prime();
  }
  return false;
}

}  // namespace

const std::vector<CatalogEntry>& reference_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> out;
    for (const RawEntry& raw : kRawCatalog) {
      const PivotOrdering o = parse_ordering(raw.ordering);
      out.push_back(CatalogEntry{raw.index, o, build_chain(o, raw.chain), raw.endpoint});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return out;
  }();
  return catalog;
}

bool CatalogReport::ok() const {
  if (!covers_c0) return false;
  if (column != 12 || reverse_row != 4 || row != 0 || reverse_column != 0) return false;
  if (generalized != 88 || parallel != 16) return false;
  return std::all_of(entries.begin(), entries.end(), [](const CatalogCheck& c) { return c.ok(); });
}

CatalogReport verify_catalog() {
  const std::vector<CatalogEntry>& catalog = reference_catalog();
  CatalogReport report;

  std::set<PivotOrdering> distinct;
  bool all_c0 = true;
  for (const CatalogEntry& e : catalog) {
    distinct.insert(e.ordering);
    all_c0 = all_c0 && e.ordering.n() == 4 && e.ordering[0] == PivotPair(0, 1);
  }
  report.covers_c0 = all_c0 && catalog.size() == 120 && distinct.size() == 120;

  for (const CatalogEntry& e : catalog) {
    CatalogCheck check;
    check.index = e.index;
    try {
      replay(e.chain);
      check.replayed = true;
    } catch (const BrokenCertificate& err) {
      check.message = err.what();
    }
    check.endpoint_ok = check.replayed && endpoint_holds(e.endpoint, e.chain.target, catalog);
    if (check.replayed && !check.endpoint_ok) check.message = "chain does not end in " + endpoint_name(e.endpoint);

    ClassificationRecord rec = [&] {
      try {
        return classify(e.ordering);
      } catch (const ClassificationFailure& err) {
        check.message = err.what();
        throw;
      }
    }();
    check.label = label_name(rec.label);
    check.classified_parameter = label_parameter(rec.label);

    if (const auto* sp = std::get_if<SerialPerm>(&rec.label)) {
      check.group_ok = e.index <= 16;
      check.parameter_ok = true;
      switch (sp->variant) {
        case SerialVariant::Column: ++report.column; break;
        case SerialVariant::Row: ++report.row; break;
        case SerialVariant::ReverseColumn: ++report.reverse_column; break;
        case SerialVariant::ReverseRow: ++report.reverse_row; break;
      }
    } else if (const auto* gs = std::get_if<GeneralizedSerial>(&rec.label)) {
      ++report.generalized;
      check.group_ok = e.index >= 17 && e.index <= 104;
      check.chain_parameter = e.chain.shift_count();
      check.parameter_ok = gs->d <= check.chain_parameter;
    } else {
      const auto& par = std::get<Parallel>(rec.label);
      ++report.parallel;
      const bool anchor_ok = (par.anchor == ParallelAnchor::Par) == (e.endpoint.kind == Endpoint::Kind::Par);
      check.group_ok = e.index >= 105 && anchor_ok;
      check.chain_parameter = e.chain.total_shift();
      check.parameter_ok = par.shift_length == check.chain_parameter;
    }
    if (!check.group_ok && check.message.empty()) check.message = "classified as " + check.label;
    if (!check.parameter_ok && check.message.empty()) check.message = "shift parameter differs from the chain";
    report.entries.push_back(std::move(check));
  }
  return report;
}

}  // namespace jpl
