#pragma once

#include "ifs/certificates.hpp"

#include <json.hpp>

#include <string>

namespace ifs::certificates {

inline constexpr int schema_version = 1;

nlohmann::json to_json(const CoverCertificate& cert);
nlohmann::json to_json(const OmegaSearch& search);
nlohmann::json to_json(const DiscDecision& decision);

struct VerifyResult {
    bool ok = false;
    std::string message;
};

// Recomputes a serialized certificate from its inputs and compares every
// recorded field exactly.
VerifyResult verify_certificate(const nlohmann::json& doc);

} // namespace ifs::certificates
