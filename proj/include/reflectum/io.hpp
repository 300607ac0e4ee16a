#pragma once

#include <filesystem>
#include <string>

#include "reflectum/representations.hpp"

namespace reflectum::io {

// Thrown on malformed files; the CLI maps it to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string detect_kind(const std::filesystem::path& file);

FiniteGroup load_group(const std::filesystem::path& file);
void save_group(const FiniteGroup& g, const std::filesystem::path& file);

struct HopfFile {
  HopfPtr hopf;
  std::optional<RMatrix> rmatrix;
};

HopfFile load_hopf(const std::filesystem::path& file);
void save_hopf(const HopfAlgebra& h, const RMatrix* r, const std::filesystem::path& file);

// The comodule file names its host; the caller supplies the host structure.
ComodPtr load_comodule(const std::filesystem::path& file, const HopfPtr& host);
void save_comodule(const ComoduleAlgebra& ca, const std::filesystem::path& file);

KMatrix load_kmatrix(const std::filesystem::path& file, const ComodPtr& comod);
void save_kmatrix(const KMatrix& k, const std::string& comod_name,
                  const std::filesystem::path& file);

Module load_module(const std::filesystem::path& file, const AlgebraPtr& algebra);
void save_module(const Module& m, const std::string& algebra_name,
                 const std::filesystem::path& file);

void save_algebra(const Algebra& a, const std::filesystem::path& file);
void save_matrix_bundle(const std::vector<std::pair<std::string, Matrix>>& mats,
                        const std::vector<std::string>& relations,
                        const std::string& name, const std::filesystem::path& file);

std::string report_to_json(const VerificationReport& rep);
void save_report(const VerificationReport& rep, const std::filesystem::path& file);

}  // namespace reflectum::io
