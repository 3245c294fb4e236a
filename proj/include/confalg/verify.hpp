#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "confalg/oracle.hpp"

namespace confalg {

struct VerifyConfig {
  int trunc = kDefaultOrder;   // N >= 4
  std::optional<double> tol;   // replaces every per-check default when set
  std::uint64_t seed = 1;
};

using RecordSink = std::function<void(const CheckRecord&)>;

// Each family emits one record per check through the sink; counts are the
// number of random instances. Streams depend only on (config, counts).
void check_mobius_vanishing(const VerifyConfig& cfg, int maps, const RecordSink& sink);
void check_cocycle_identity(const VerifyConfig& cfg, int pairs, int points, const RecordSink& sink);
void check_schwarzian_diagonal(const VerifyConfig& cfg, int maps, int degree, const RecordSink& sink);
void check_addition_formula(const VerifyConfig& cfg, int max_degree, int pairs, const RecordSink& sink);
void check_green_decay(const VerifyConfig& cfg, const RecordSink& sink);
void check_delta_reproduction(const VerifyConfig& cfg, int exact_samples, int bump_samples, const RecordSink& sink);
void check_growth(const VerifyConfig& cfg, const RecordSink& sink);
void check_oracle_contraction(const VerifyConfig& cfg, int pairs, int derivative_pairs, const RecordSink& sink);
void check_conformal_invariance(const VerifyConfig& cfg, int maps, int words, const RecordSink& sink);
void check_anomaly(const VerifyConfig& cfg, int cases, int mobius_cases, const RecordSink& sink);
void check_operad_compatibility(const VerifyConfig& cfg, int instances, const RecordSink& sink);
void check_operad_laws(const VerifyConfig& cfg, int instances, const RecordSink& sink);
void check_wick(const VerifyConfig& cfg, int words, const RecordSink& sink);
void check_oracle_identities(const VerifyConfig& cfg, const RecordSink& sink);

struct SuiteResult {
  int checks = 0;
  int failures = 0;
};

const std::vector<std::string>& suite_names();  // harmonic, cocycle, ..., all
// DomainError for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg, const RecordSink& sink);

}  // namespace confalg
