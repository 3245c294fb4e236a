#pragma once

#include <json.hpp>

#include "confalg/fock.hpp"
#include "confalg/operad.hpp"
#include "confalg/oracle.hpp"

namespace confalg {

using Json = nlohmann::json;

// Line-delimited JSON records. Readers throw ParseError on malformed input.
Json to_json(const ConformalMap& f);
ConformalMap map_from_json(const Json& j);

Json to_json(const DiskConfiguration& c);
DiskConfiguration configuration_from_json(const Json& j, const SamplingConfig& cfg = {});

// {"d", "n", "terms": [{"alpha", "num", "den"}]}; n is the degree (-1 for
// zero). num/den are JSON integers, or decimal strings past int64.
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);
// Complex polynomials add "imag_terms" when the imaginary part is nonzero.
Json to_json(const CPoly& p);
CPoly cpoly_from_json(const Json& j);

Json to_json(const HarmonicDistribution& T);
HarmonicDistribution distribution_from_json(const Json& j);

Json to_json(const Observable& F);
Observable observable_from_json(const Json& j);

Json to_json(const StateValue& v);
Json to_json(const CheckRecord& r);

// A real value when the imaginary part is zero, else [re, im].
Json complex_json(Complex z);
Complex complex_from_json(const Json& j);

Json error_record(const std::string& kind, const std::string& message);

}  // namespace confalg
