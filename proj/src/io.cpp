#include "reflectum/io.hpp"

#include <fstream>

#include <json.hpp>

namespace reflectum::io {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return j;
}

void write_json(const ordered_json& j, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw ParseError("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

void expect_kind(const ordered_json& j, const std::string& kind, const std::string& file) {
  if (!j.contains("kind") || j["kind"] != kind)
    throw ParseError(file + ": expected kind '" + kind + "'");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1)
    throw ParseError(file + ": unsupported schema_version");
}

Scalar parse_scalar(const ordered_json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": rationals must be strings");
  try {
    return Scalar::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::vector<Scalar> parse_dense(const ordered_json& arr, std::size_t dim,
                                const std::string& where) {
  if (!arr.is_array() || arr.size() != dim) throw ParseError(where + ": bad vector length");
  std::vector<Scalar> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = parse_scalar(arr[i], where);
  return out;
}

ordered_json dense_json(const std::vector<Scalar>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

// Sparse structure-constant triples/quadruples with string rationals.
MulTable parse_mult(const ordered_json& arr, std::uint32_t dim, const std::string& where) {
  MulTable t(dim, dim);
  if (!arr.is_array()) throw ParseError(where + ": mult must be an array");
  for (std::size_t n = 0; n < arr.size(); ++n) {
    const auto& e = arr[n];
    if (!e.is_array() || e.size() != 4)
      throw ParseError(where + ": mult entry " + std::to_string(n) + " must be [i,j,k,c]");
    std::uint32_t i = e[0].get<std::uint32_t>(), j = e[1].get<std::uint32_t>(),
                  k = e[2].get<std::uint32_t>();
    if (i >= dim || j >= dim || k >= dim)
      throw ParseError(where + ": mult entry " + std::to_string(n) + " out of range");
    t.row(i, j).emplace_back(k, parse_scalar(e[3], where));
  }
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j) sparse_sort_combine(t.row(i, j));
  return t;
}

ordered_json mult_json(const MulTable& t) {
  ordered_json out = ordered_json::array();
  for (std::uint32_t i = 0; i < t.dim_i(); ++i)
    for (std::uint32_t j = 0; j < t.dim_j(); ++j)
      for (const auto& [k, c] : t.row(i, j))
        out.push_back(ordered_json::array({i, j, k, c.str()}));
  return out;
}

Matrix parse_sparse_matrix(const ordered_json& arr, std::size_t rows, std::size_t cols,
                           const std::string& where) {
  Matrix m(rows, cols);
  if (!arr.is_array()) throw ParseError(where + ": expected an array of [i,j,c]");
  for (std::size_t n = 0; n < arr.size(); ++n) {
    const auto& e = arr[n];
    if (!e.is_array() || e.size() != 3)
      throw ParseError(where + ": entry " + std::to_string(n) + " must be [i,j,c]");
    std::size_t i = e[0].get<std::size_t>(), j = e[1].get<std::size_t>();
    if (i >= rows || j >= cols)
      throw ParseError(where + ": entry " + std::to_string(n) + " out of range");
    m.at(i, j) += parse_scalar(e[2], where);
  }
  return m;
}

ordered_json sparse_matrix_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) out.push_back(ordered_json::array({i, j, m.at(i, j).str()}));
  return out;
}

}  // namespace

std::string detect_kind(const std::filesystem::path& file) {
  ordered_json j = read_json(file);
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError(file.string() + ": missing kind");
  return j["kind"].get<std::string>();
}

FiniteGroup load_group(const std::filesystem::path& file) {
  ordered_json j = read_json(file);
  expect_kind(j, "group", file.string());
  FiniteGroup g;
  g.order = j.at("order").get<std::uint32_t>();
  g.name = j.value("name", "G");
  if (j.contains("elements")) g.element_labels = j["elements"].get<std::vector<std::string>>();
  if (g.element_labels.size() != g.order)
    throw ParseError(file.string() + ": elements must list every group element");
  const auto& table = j.at("table");
  if (!table.is_array() || table.size() != g.order)
    throw ParseError(file.string() + ": table must be order x order");
  g.mult_table.resize(std::size_t(g.order) * g.order);
  for (std::uint32_t i = 0; i < g.order; ++i) {
    if (!table[i].is_array() || table[i].size() != g.order)
      throw ParseError(file.string() + ": table row has the wrong length");
    for (std::uint32_t k = 0; k < g.order; ++k)
      g.mult_table[std::size_t(i) * g.order + k] = table[i][k].get<std::uint32_t>();
  }
  g.inverse_table.assign(g.order, 0);
  for (std::uint32_t a = 0; a < g.order; ++a)
    for (std::uint32_t b = 0; b < g.order; ++b)
      if (g.mult_table[std::size_t(a) * g.order + b] == 0) g.inverse_table[a] = b;
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return g;
}

void save_group(const FiniteGroup& g, const std::filesystem::path& file) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "group";
  j["name"] = g.name;
  j["order"] = g.order;
  j["elements"] = g.element_labels;
  ordered_json table = ordered_json::array();
  for (std::uint32_t i = 0; i < g.order; ++i) {
    ordered_json row = ordered_json::array();
    for (std::uint32_t k = 0; k < g.order; ++k)
      row.push_back(g.mult_table[std::size_t(i) * g.order + k]);
    table.push_back(row);
  }
  j["table"] = table;
  write_json(j, file);
}

HopfFile load_hopf(const std::filesystem::path& file) {
  ordered_json j = read_json(file);
  expect_kind(j, "hopf", file.string());
  auto h = std::make_shared<HopfAlgebra>();
  std::uint32_t dim = j.at("dim").get<std::uint32_t>();
  h->alg.dim = dim;
  h->alg.name = j.value("name", "H");
  if (j.contains("basis")) h->alg.basis = j["basis"].get<std::vector<std::string>>();
  h->alg.unit = parse_dense(j.at("unit"), dim, file.string() + ":unit");
  h->alg.mult = parse_mult(j.at("mult"), dim, file.string() + ":mult");
  h->coalg.dim = dim;
  h->coalg.counit = parse_dense(j.at("counit"), dim, file.string() + ":counit");
  h->coalg.comult = CoTable(dim, dim, dim);
  {
    const auto& arr = j.at("comult");
    if (!arr.is_array()) throw ParseError(file.string() + ": comult must be an array");
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 4)
        throw ParseError(file.string() + ": comult entries must be [k,i,j,c]");
      std::uint32_t k = e[0].get<std::uint32_t>(), i = e[1].get<std::uint32_t>(),
                    jj = e[2].get<std::uint32_t>();
      if (k >= dim || i >= dim || jj >= dim)
        throw ParseError(file.string() + ": comult entry out of range");
      h->coalg.comult.row(k).emplace_back(i * dim + jj,
                                          parse_scalar(e[3], file.string() + ":comult"));
    }
    for (std::uint32_t k = 0; k < dim; ++k) sparse_sort_combine(h->coalg.comult.row(k));
  }
  h->antipode = parse_sparse_matrix(j.at("antipode"), dim, dim, file.string() + ":antipode");
  if (j.contains("antipode_inverse")) {
    h->antipode_inv = parse_sparse_matrix(j["antipode_inverse"], dim, dim,
                                          file.string() + ":antipode_inverse");
  } else {
    auto inv = invert(h->antipode);
    if (!inv) throw ParseError(file.string() + ": antipode is not invertible");
    h->antipode_inv = *inv;
  }
  HopfFile out;
  out.hopf = h;
  if (j.contains("rmatrix")) {
    RMatrix r;
    r.host = h;
    r.coeffs =
        parse_sparse_matrix(j["rmatrix"].at("coeffs"), dim, dim, file.string() + ":rmatrix");
    if (j["rmatrix"].contains("inverse_coeffs")) {
      r.inverse_coeffs = parse_sparse_matrix(j["rmatrix"]["inverse_coeffs"], dim, dim,
                                             file.string() + ":rmatrix");
    } else {
      auto inv = two_leg_inverse(h->alg, h->alg, r.coeffs);
      if (!inv) throw ParseError(file.string() + ": R-matrix is not invertible");
      r.inverse_coeffs = *inv;
    }
    out.rmatrix = std::move(r);
  }
  return out;
}

void save_hopf(const HopfAlgebra& h, const RMatrix* r, const std::filesystem::path& file) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "hopf";
  j["name"] = h.alg.name;
  j["dim"] = h.dim();
  j["basis"] = h.alg.basis;
  j["unit"] = dense_json(h.alg.unit);
  j["counit"] = dense_json(h.coalg.counit);
  j["mult"] = mult_json(h.alg.mult);
  ordered_json comult = ordered_json::array();
  const std::uint32_t n = h.dim();
  for (std::uint32_t k = 0; k < n; ++k)
    for (const auto& [key, c] : h.coalg.comult.row(k))
      comult.push_back(ordered_json::array({k, key / n, key % n, c.str()}));
  j["comult"] = comult;
  j["antipode"] = sparse_matrix_json(h.antipode);
  j["antipode_inverse"] = sparse_matrix_json(h.antipode_inv);
  if (r) {
    ordered_json rj;
    rj["coeffs"] = sparse_matrix_json(r->coeffs);
    rj["inverse_coeffs"] = sparse_matrix_json(r->inverse_coeffs);
    j["rmatrix"] = rj;
  }
  write_json(j, file);
}

ComodPtr load_comodule(const std::filesystem::path& file, const HopfPtr& host) {
  ordered_json j = read_json(file);
  expect_kind(j, "comodule_algebra", file.string());
  auto ca = std::make_shared<ComoduleAlgebra>();
  ca->host = host;
  auto alg = std::make_shared<Algebra>();
  const auto& aj = j.at("algebra");
  alg->dim = aj.at("dim").get<std::uint32_t>();
  alg->name = j.value("name", "A");
  if (aj.contains("basis")) alg->basis = aj["basis"].get<std::vector<std::string>>();
  alg->unit = parse_dense(aj.at("unit"), alg->dim, file.string() + ":unit");
  alg->mult = parse_mult(aj.at("mult"), alg->dim, file.string() + ":algebra.mult");
  ca->algebra = alg;
  const std::uint32_t nh = host->dim();
  ca->coaction = CoTable(alg->dim, nh, alg->dim);
  const auto& arr = j.at("coaction");
  if (!arr.is_array()) throw ParseError(file.string() + ": coaction must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 4)
      throw ParseError(file.string() + ": coaction entries must be [j,h,k,c]");
    std::uint32_t jj = e[0].get<std::uint32_t>(), hh = e[1].get<std::uint32_t>(),
                  k = e[2].get<std::uint32_t>();
    if (jj >= alg->dim || hh >= nh || k >= alg->dim)
      throw ParseError(file.string() + ": coaction entry out of range");
    ca->coaction.row(jj).emplace_back(hh * alg->dim + k,
                                      parse_scalar(e[3], file.string() + ":coaction"));
  }
  for (std::uint32_t jj = 0; jj < alg->dim; ++jj) sparse_sort_combine(ca->coaction.row(jj));
  return ca;
}

void save_comodule(const ComoduleAlgebra& ca, const std::filesystem::path& file) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "comodule_algebra";
  j["name"] = ca.algebra->name;
  j["hopf_ref"] = ca.host->name();
  ordered_json aj;
  aj["dim"] = ca.algebra->dim;
  aj["basis"] = ca.algebra->basis;
  aj["unit"] = dense_json(ca.algebra->unit);
  aj["mult"] = mult_json(ca.algebra->mult);
  j["algebra"] = aj;
  ordered_json co = ordered_json::array();
  const std::uint32_t da = ca.algebra->dim;
  for (std::uint32_t jj = 0; jj < da; ++jj)
    for (const auto& [key, c] : ca.coaction.row(jj))
      co.push_back(ordered_json::array({jj, key / da, key % da, c.str()}));
  j["coaction"] = co;
  write_json(j, file);
}

KMatrix load_kmatrix(const std::filesystem::path& file, const ComodPtr& comod) {
  ordered_json j = read_json(file);
  expect_kind(j, "kmatrix", file.string());
  KMatrix k;
  k.comod = comod;
  k.coeffs = parse_sparse_matrix(j.at("coeffs"), comod->host->dim(), comod->algebra->dim,
                                 file.string() + ":coeffs");
  if (j.contains("inverse_coeffs"))
    k.inverse_coeffs = parse_sparse_matrix(j["inverse_coeffs"], comod->host->dim(),
                                           comod->algebra->dim, file.string());
  return k;
}

void save_kmatrix(const KMatrix& k, const std::string& comod_name,
                  const std::filesystem::path& file) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "kmatrix";
  j["hopf_ref"] = k.comod->host->name();
  j["comod_ref"] = comod_name;
  j["coeffs"] = sparse_matrix_json(k.coeffs);
  if (k.inverse_coeffs.rows() == k.coeffs.rows())
    j["inverse_coeffs"] = sparse_matrix_json(k.inverse_coeffs);
  write_json(j, file);
}

Module load_module(const std::filesystem::path& file, const AlgebraPtr& algebra) {
  ordered_json j = read_json(file);
  expect_kind(j, "module", file.string());
  Module m;
  m.algebra = algebra;
  m.dim = j.at("dim").get<std::uint32_t>();
  m.action.assign(algebra->dim, Matrix(m.dim, m.dim));
  const auto& arr = j.at("action");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 4)
      throw ParseError(file.string() + ": action entries must be [i,m,m',c]");
    std::uint32_t i = e[0].get<std::uint32_t>(), mm = e[1].get<std::uint32_t>(),
                  mp = e[2].get<std::uint32_t>();
    if (i >= algebra->dim || mm >= m.dim || mp >= m.dim)
      throw ParseError(file.string() + ": action entry out of range");
    m.action[i].at(mp, mm) += parse_scalar(e[3], file.string() + ":action");
  }
  return m;
}

void save_module(const Module& m, const std::string& algebra_name,
                 const std::filesystem::path& file) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "module";
  j["algebra_ref"] = algebra_name;
  j["dim"] = m.dim;
  ordered_json arr = ordered_json::array();
  for (std::uint32_t i = 0; i < m.action.size(); ++i)
    for (std::uint32_t c = 0; c < m.dim; ++c)
      for (std::uint32_t r = 0; r < m.dim; ++r)
        if (!m.action[i].at(r, c).is_zero())
          arr.push_back(ordered_json::array({i, c, r, m.action[i].at(r, c).str()}));
  j["action"] = arr;
  write_json(j, file);
}

void save_algebra(const Algebra& a, const std::filesystem::path& file) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "algebra";
  j["name"] = a.name;
  j["dim"] = a.dim;
  j["basis"] = a.basis;
  j["unit"] = dense_json(a.unit);
  j["mult"] = mult_json(a.mult);
  write_json(j, file);
}

void save_matrix_bundle(const std::vector<std::pair<std::string, Matrix>>& mats,
                        const std::vector<std::string>& relations,
                        const std::string& name, const std::filesystem::path& file) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "matrix_bundle";
  j["name"] = name;
  ordered_json arr = ordered_json::array();
  for (const auto& [mname, m] : mats) {
    ordered_json mj;
    mj["name"] = mname;
    mj["rows"] = m.rows();
    mj["cols"] = m.cols();
    mj["entries"] = sparse_matrix_json(m);
    arr.push_back(mj);
  }
  j["matrices"] = arr;
  j["verified_relations"] = relations;
  write_json(j, file);
}

std::string report_to_json(const VerificationReport& rep) {
  ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "report";
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks()) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.status == CheckStatus::Pass   ? "PASS"
                   : c.status == CheckStatus::Fail ? "FAIL"
                                                   : "SKIPPED";
    if (c.witness) {
      ordered_json w;
      w["index"] = c.witness->index;
      ordered_json disc = ordered_json::array();
      for (const auto& [k, v] : c.witness->discrepancy)
        disc.push_back(ordered_json::array({k, v.str()}));
      w["discrepancy"] = disc;
      cj["witness"] = w;
    } else {
      cj["witness"] = nullptr;
    }
    cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  ordered_json s;
  s["pass"] = rep.count(CheckStatus::Pass);
  s["fail"] = rep.count(CheckStatus::Fail);
  s["skipped"] = rep.count(CheckStatus::Skipped);
  j["summary"] = s;
  return j.dump(2) + "\n";
}

void save_report(const VerificationReport& rep, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw ParseError("cannot write " + file.string());
  out << report_to_json(rep);
}

}  // namespace reflectum::io
