#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sidonkit/analysis.hpp"
#include "sidonkit/curveoracle.hpp"
#include "sidonkit/decomposer.hpp"
#include "sidonkit/deletionlab.hpp"
#include "sidonkit/sunflower.hpp"
#include "sidonkit/types.hpp"

namespace sidonkit::io {

// Insertion-ordered keys keep dumps byte-stable.
using Json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
/// 16 hex digits of FNV-1a over the compact dump.
std::string config_hash(const Json& resolved);

Json to_json(const Rational& r);  // "p/q"
Rational rational_from_json(const Json& j);

Json to_json(const ModSet& set);
ModSet modset_from_json(const Json& j);
/// "mod N" then one element per line.
std::string modset_to_text(const ModSet& set);
ModSet modset_from_text(std::string_view text);
/// Either format, decided by the first non-space character. A JSON document
/// with a "payload" member (CLI output) is unwrapped.
ModSet read_modset(const std::filesystem::path& path);

Json to_json(const SampleConfig& cfg);
SampleConfig config_from_json(const Json& j);

/// One integer per line.
std::string intseq_to_text(const IntSeq& seq);
/// {"horizon", "count", "config" (when sampled), "configHash"}.
Json intseq_sidecar(const IntSeq& seq);
IntSeq intseq_from_text(std::string_view text, const Json& sidecar);
/// Writes `path` and `path` + ".json".
void write_intseq(const std::filesystem::path& path, const IntSeq& seq);
IntSeq read_intseq(const std::filesystem::path& path);

Json to_json(const decomposer::Decomposition& d);
decomposer::Decomposition decomposition_from_json(const Json& j);

/// One JSON object per line: kind, target, convention and the tuple.
std::string family_to_jsonl(const deletionlab::VectorFamily& family);
deletionlab::VectorFamily family_from_jsonl(std::string_view text);
std::vector<deletionlab::Tuple> read_tuples(const std::filesystem::path& path);

Json to_json(const sunflower::SunflowerCert& cert, const std::vector<deletionlab::Tuple>& family);
sunflower::SunflowerCert cert_from_json(const Json& j);

/// "# {metadata}" then "t1,t2,t3,t4" with numerator/denominator cells.
std::string torus_to_csv(const curveoracle::QuadricSolutions& solutions);

Json to_json(const analysis::RatioReport& report);
std::string report_to_csv(const analysis::RatioReport& report);
std::string rows_to_csv(const std::vector<analysis::McRow>& rows);

/// Regression constants: "max" pins bound a measured sup from above,
/// "min" pins bound a measured inf from below, each with 1% slack.
/// "exact" pins hold deterministic counts and must match exactly.
struct Pin {
    std::string kind = "max";
    double value = 0;
};

class PinFile {
public:
    static PinFile load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    bool has(const std::string& name) const { return pins_.count(name) != 0; }
    const Pin& at(const std::string& name) const;
    void set(const std::string& name, Pin pin) { pins_[name] = pin; }
    /// Within the slack of the stored pin; throws InvalidArgument if absent.
    bool check(const std::string& name, double measured) const;
    const std::map<std::string, Pin>& all() const noexcept { return pins_; }

private:
    std::map<std::string, Pin> pins_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace sidonkit::io
