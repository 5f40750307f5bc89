#include "nev/io.hpp"

#include <fstream>
#include <sstream>

namespace nev {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<double> real_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": array expected");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError(std::string(what) + ": number expected");
    out.push_back(x.get<double>());
  }
  return out;
}

Json real_array_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

std::vector<CMatrix> matrix_list(const Json& j, Index d, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": array expected");
  std::vector<CMatrix> out;
  for (const auto& x : j) {
    if (d == 1 && (x.is_number() || (x.is_array() && x.size() == 2 && x[0].is_number()))) {
      out.push_back(CMatrix::Constant(1, 1, complex_from_json(x)));
      continue;
    }
    CMatrix m = matrix_from_json(x);
    if (m.rows() != d || m.cols() != d)
      throw ParseError(std::string(what) + ": block of wrong size");
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("complex entry must be a number or [re, im]");
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (rows == 0) return CMatrix(0, 0);
  if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
  const auto cols = static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError("matrix rows must have equal length");
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json to_json(const RealizedFunction& f) {
  Json out;
  out["dim"] = f.dim();
  if (f.is_measure()) {
    const auto& m = f.as_measure();
    out["variant"] = "measure";
    out["A"] = matrix_to_json(m.A);
    out["B"] = matrix_to_json(m.B);
    Json atoms = Json::array();
    for (const auto& a : m.atoms) atoms.push_back({{"t", a.t}, {"W", matrix_to_json(a.weight)}});
    out["atoms"] = std::move(atoms);
  } else {
    const auto& r = f.as_realization();
    out["variant"] = "realization";
    out["T"] = matrix_to_json(r.T);
    out["K"] = matrix_to_json(r.K);
  }
  return out;
}

RealizedFunction realized_from_json(const Json& j, bool checked) {
  std::string variant;
  try {
    variant = field(j, "variant").get<std::string>();
    if (variant == "measure") {
      std::vector<Atom> atoms;
      for (const auto& a : field(j, "atoms"))
        atoms.push_back({field(a, "t").get<double>(), matrix_from_json(field(a, "W"))});
      CMatrix A = matrix_from_json(field(j, "A"));
      CMatrix B = matrix_from_json(field(j, "B"));
      if (!checked) return RealizedFunction::unchecked(DiscreteMeasure{A, B, std::move(atoms)});
      return RealizedFunction::measure(std::move(A), std::move(B), std::move(atoms));
    }
    if (variant == "realization") {
      CMatrix T = matrix_from_json(field(j, "T"));
      CMatrix K = matrix_from_json(field(j, "K"));
      if (!checked) return RealizedFunction::unchecked(Realization{std::move(T), std::move(K)});
      return RealizedFunction::realization(std::move(T), std::move(K));
    }
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown variant \"" + variant + "\"");
}

Json to_json(const BlockJacobi& j) {
  Json out;
  out["d"] = j.block_dim();
  if (j.block_dim() == 1) {
    out["a"] = real_array_json(j.scalar_diagonal());
    out["b"] = real_array_json(j.scalar_off_diagonal());
  } else {
    Json a = Json::array(), b = Json::array();
    for (const auto& m : j.diagonal()) a.push_back(matrix_to_json(m));
    for (const auto& m : j.off_diagonal()) b.push_back(matrix_to_json(m));
    out["a"] = std::move(a);
    out["b"] = std::move(b);
  }
  return out;
}

BlockJacobi jacobi_from_json(const Json& j) {
  const Json& dj = field(j, "d");
  if (!dj.is_number_integer() || dj.get<Index>() < 1) throw ParseError("d must be a positive integer");
  const Index d = dj.get<Index>();
  return BlockJacobi(matrix_list(field(j, "a"), d, "a"), matrix_list(field(j, "b"), d, "b"));
}

Json to_json(const StepHamiltonian& h) {
  return {{"breakpoints", real_array_json(h.breakpoints())},
          {"thetas", real_array_json(h.thetas())}};
}

StepHamiltonian hamiltonian_from_json(const Json& j) {
  return StepHamiltonian(real_array(field(j, "breakpoints"), "breakpoints"),
                         real_array(field(j, "thetas"), "thetas"));
}

Json to_json(const WeylDiskEstimate& e) {
  Json out{{"lambda", complex_to_json(e.lambda)},
           {"m", complex_to_json(e.center)},
           {"T", e.truncation_T},
           {"converged", e.converged}};
  // JSON has no infinity; the line case is reported as null.
  out["radius"] = e.line ? Json(nullptr) : Json(e.radius);
  return out;
}

Json to_json(const SubspaceRealization& r) {
  return {{"T", matrix_to_json(r.T)}, {"M_basis", matrix_to_json(r.basis)}};
}

SubspaceRealization subspace_from_json(const Json& j) {
  SubspaceRealization r{matrix_from_json(field(j, "T")), matrix_from_json(field(j, "M_basis"))};
  r.validate();
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace nev
