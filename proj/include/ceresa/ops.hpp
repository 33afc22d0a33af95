#pragma once

// The operations behind each CLI subcommand, as JSON documents. The CLI and
// the Python module both go through here so their output is identical.

#include <optional>
#include <string>

#include "ceresa/newform_client.hpp"
#include "ceresa/serialize.hpp"

namespace ceresa {

Json heegner_report(std::int64_t N, std::int64_t D, std::optional<std::int64_t> r);
Json pullback_report(std::int64_t N, const std::string& m0, std::int64_t r1);
Json genus_report(std::int64_t N, const std::string& curve);
Json lattice_report(std::int64_t N);
Json newforms_report(NewformClient& client, std::int64_t M, FetchMode mode);
Json selftest_report();

/// Certificate JSON; `source` as for certify().
Json certify_report(const std::string& N, const std::optional<NewformSource>& source);

}  // namespace ceresa
