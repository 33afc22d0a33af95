#pragma once

// JSON views of the library's values. Rationals and big integers are strings
// ("p/q" or "p") so nothing is lost to floating point; small integers stay
// numbers. Field names are frozen by the documents under schema/.

#include <json.hpp>

#include "ceresa/certifier.hpp"
#include "ceresa/heegner.hpp"
#include "ceresa/lattice.hpp"
#include "ceresa/modular_geometry.hpp"
#include "ceresa/newform_client.hpp"
#include "ceresa/pullback.hpp"

namespace ceresa {

using Json = nlohmann::json;

Json to_json(const CurveProfile& p);
Json to_json(const GramLattice& l);
Json to_json(const DiscElement& mu);
Json to_json(const BQForm& f);
Json to_json(const HeegnerDivisor& d);
Json to_json(const DivisorClass& c);
Json to_json(const AmbientGenerator& g, std::int64_t N);
Json to_json(const PullbackDecomposition& d);
Json to_json(const Certificate& c);
Json to_json_with_source(const NewformRecord& r);

}  // namespace ceresa
