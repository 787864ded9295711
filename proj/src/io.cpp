#include "jpl/io.hpp"

#include "jpl/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace jpl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<long> parse_ints(std::string_view text, const char* what) {
  std::istringstream in{std::string(text)};
  std::vector<long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError(std::string(what) + ": '" + tok + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

}  // namespace

PivotOrdering parse_ordering(std::string_view text) {
  std::vector<PivotPair> seq;
  std::set<PivotPair> seen;
  int max_index = 0;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw ParseError("ordering: empty pair");
    const std::vector<long> v = parse_ints(item, "ordering");
    if (v.size() != 2) throw ParseError("ordering: pair '" + std::string(item) + "' needs two indices");
    if (v[0] < 1 || v[1] < 1 || v[0] > 64 || v[1] > 64)
      throw ParseError("ordering: index out of range in '" + std::string(item) + "'");
    if (v[0] == v[1]) throw ParseError("ordering: pair '" + std::string(item) + "' repeats an index");
    const PivotPair p(static_cast<int>(v[0]) - 1, static_cast<int>(v[1]) - 1);
    if (!seen.insert(p).second) throw ParseError("ordering: duplicate pair " + std::string(item));
    max_index = std::max(max_index, p.s + 1);
    seq.push_back(p);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  int n = 2;
  while (pair_count(n) < static_cast<int>(seq.size())) ++n;
  if (pair_count(n) != static_cast<int>(seq.size()))
    throw ParseError("ordering: " + std::to_string(seq.size()) + " pairs is not n(n-1)/2 for any n");
  if (max_index > n) throw ParseError("ordering: index " + std::to_string(max_index) + " exceeds n = " + std::to_string(n));
  return PivotOrdering(n, std::move(seq));
}

std::string format_ordering(const PivotOrdering& o) {
  std::string out;
  for (int k = 0; k < o.size(); ++k) {
    if (k) out += ", ";
    out += std::to_string(o[k].r + 1) + " " + std::to_string(o[k].s + 1);
  }
  return out;
}

IndexPermutation parse_permutation(std::string_view text) {
  std::vector<int> image;
  for (long v : parse_ints(text, "permutation")) image.push_back(static_cast<int>(v) - 1);
  if (image.empty()) throw ParseError("permutation: empty image list");
  try {
    return IndexPermutation(std::move(image));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("permutation: ") + e.what());
  }
}

std::string format_permutation(const IndexPermutation& q) {
  std::string out;
  for (int i = 0; i < q.n(); ++i) {
    if (i) out += ' ';
    out += std::to_string(q(i) + 1);
  }
  return out;
}

std::string format_certificate(const Certificate& cert) {
  std::string out = "source: " + format_ordering(cert.source) + "\n";
  for (const RelationStep& step : cert.steps) {
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, AdjacentTranspose>) out += "T " + std::to_string(st.position);
          else if constexpr (std::is_same_v<T, CyclicShift>) out += "S " + std::to_string(st.length);
          else out += "P " + format_permutation(st.q);
        },
        step);
    out += '\n';
  }
  out += "target: " + format_ordering(cert.target) + "\n";
  return out;
}

Certificate parse_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<PivotOrdering> source, target;
  std::vector<RelationStep> steps;
  while (std::getline(in, line)) {
    const std::string_view l = trim(line);
    if (l.empty()) continue;
    if (target) throw ParseError("certificate: content after target line");
    if (l.starts_with("source:")) {
      if (source) throw ParseError("certificate: second source line");
      source = parse_ordering(l.substr(7));
    } else if (l.starts_with("target:")) {
      if (!source) throw ParseError("certificate: target before source");
      target = parse_ordering(l.substr(7));
    } else {
      if (!source) throw ParseError("certificate: step before source line");
      const char kind = l.front();
      const std::string_view arg = l.substr(1);
      if (kind == 'P') {
        steps.emplace_back(Permute{parse_permutation(arg)});
      } else if (kind == 'T' || kind == 'S') {
        const std::vector<long> v = parse_ints(arg, "certificate");
        if (v.size() != 1) throw ParseError("certificate: step '" + std::string(l) + "' needs one integer");
        if (kind == 'T') steps.emplace_back(AdjacentTranspose{static_cast<int>(v[0])});
        else steps.emplace_back(CyclicShift{static_cast<int>(v[0])});
      } else {
        throw ParseError("certificate: unknown step '" + std::string(l) + "'");
      }
    }
  }
  if (!source || !target) throw ParseError("certificate: missing source or target line");
  return Certificate{*source, std::move(steps), *target};
}

Eigen::MatrixXd parse_square_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<double> values;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) throw ParseError("matrix: bad entry '" + tok + "'");
    values.push_back(v);
  }
  const auto n = static_cast<long>(std::lround(std::sqrt(static_cast<double>(values.size()))));
  if (values.empty() || n * n != static_cast<long>(values.size()))
    throw ParseError("matrix: " + std::to_string(values.size()) + " entries do not form a square matrix");
  Eigen::MatrixXd a(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) a(r, c) = values[static_cast<std::size_t>(r * n + c)];
  return a;
}

SymMatrixd parse_sym_matrix(std::string_view text) {
  const Eigen::MatrixXd a = parse_square_matrix(text);
  try {
    return SymMatrixd::FromDense(a);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace jpl
