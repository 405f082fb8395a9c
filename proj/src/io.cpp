#include "sidonkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sidonkit/error.hpp"

namespace sidonkit::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        parse_error(std::string("bad field '") + key + "': " + e.what());
    }
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        if (!line.empty()) out.push_back(line);
        if (eol == std::string_view::npos) break;
        text.remove_prefix(eol + 1);
    }
    return out;
}

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    if (s.empty()) parse_error("empty integer");
    for (char c : s) {
        if (c < '0' || c > '9') parse_error("not an integer: '" + std::string(s) + "'");
        if (v > (UINT64_MAX - (c - '0')) / 10) parse_error("integer overflow: '" + std::string(s) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

std::string construction_name(decomposer::Construction c) {
    return c == decomposer::Construction::Ruzsa ? "ruzsa" : "erdos_turan";
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const Json& resolved) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(resolved.dump())));
    return buf;
}

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    parse_error("expected a rational as \"p/q\"");
}

Json to_json(const ModSet& set) {
    Json j;
    j["modulus"] = set.modulus();
    j["elements"] = std::vector<std::uint64_t>(set.elements().begin(), set.elements().end());
    return j;
}

ModSet modset_from_json(const Json& j) {
    return ModSet(field<std::uint64_t>(j, "modulus"), field<std::vector<std::uint64_t>>(j, "elements"));
}

std::string modset_to_text(const ModSet& set) {
    std::string out = "mod " + std::to_string(set.modulus()) + "\n";
    for (auto x : set.elements()) out += std::to_string(x) + "\n";
    return out;
}

ModSet modset_from_text(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front().substr(0, 4) != "mod ") parse_error("first line must be 'mod N'");
    auto head = lines.front().substr(4);
    while (!head.empty() && head.front() == ' ') head.remove_prefix(1);
    const auto N = parse_u64(head);
    std::vector<std::uint64_t> elements;
    for (std::size_t i = 1; i < lines.size(); ++i) elements.push_back(parse_u64(lines[i]));
    return ModSet(N, std::move(elements));
}

ModSet read_modset(const std::filesystem::path& path) {
    const auto text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            const auto j = Json::parse(text);
            // Also accept a CLI result document wrapping the set.
            return modset_from_json(j.contains("payload") ? j.at("payload") : j);
        } catch (const nlohmann::json::parse_error& e) {
            parse_error(e.what());
        }
    }
    return modset_from_text(text);
}

Json to_json(const SampleConfig& cfg) {
    Json j;
    j["gamma"] = to_json(cfg.gamma);
    j["m"] = cfg.m;
    j["residues"] = to_json(cfg.residues);
    j["horizon"] = cfg.horizon;
    j["seed"] = cfg.seed;
    return j;
}

SampleConfig config_from_json(const Json& j) {
    SampleConfig cfg;
    if (!j.contains("gamma")) parse_error("missing field 'gamma'");
    cfg.gamma = rational_from_json(j.at("gamma"));
    cfg.m = field<std::uint64_t>(j, "m");
    cfg.residues = modset_from_json(j.at("residues"));
    cfg.horizon = field<std::uint64_t>(j, "horizon");
    cfg.seed = field<std::uint64_t>(j, "seed");
    cfg.validate();
    return cfg;
}

std::string intseq_to_text(const IntSeq& seq) {
    std::string out;
    for (auto x : seq.elements()) out += std::to_string(x) + "\n";
    return out;
}

Json intseq_sidecar(const IntSeq& seq) {
    Json j;
    j["horizon"] = seq.horizon();
    j["count"] = seq.size();
    if (seq.provenance()) {
        j["config"] = to_json(*seq.provenance());
        j["configHash"] = config_hash(j["config"]);
    }
    return j;
}

IntSeq intseq_from_text(std::string_view text, const Json& sidecar) {
    std::vector<std::uint64_t> elements;
    for (auto line : lines_of(text)) elements.push_back(parse_u64(line));
    std::optional<SampleConfig> cfg;
    if (sidecar.contains("config")) {
        cfg = config_from_json(sidecar.at("config"));
        if (sidecar.contains("configHash") && sidecar.at("configHash") != config_hash(to_json(*cfg)))
            parse_error("config hash does not match the sidecar config");
    }
    if (sidecar.contains("count") && sidecar.at("count").get<std::size_t>() != elements.size())
        parse_error("element count does not match the sidecar");
    return IntSeq(std::move(elements), field<std::uint64_t>(sidecar, "horizon"), cfg);
}

void write_intseq(const std::filesystem::path& path, const IntSeq& seq) {
    write_file(path, intseq_to_text(seq));
    write_file(path.string() + ".json", intseq_sidecar(seq).dump(2) + "\n");
}

IntSeq read_intseq(const std::filesystem::path& path) {
    const auto sidecar_path = std::filesystem::path(path.string() + ".json");
    Json sidecar;
    if (std::filesystem::exists(sidecar_path)) {
        try {
            sidecar = Json::parse(read_file(sidecar_path));
        } catch (const nlohmann::json::parse_error& e) {
            parse_error(e.what());
        }
    }
    const auto text = read_file(path);
    if (!sidecar.contains("horizon")) {
        // Bare list: the horizon is the largest element.
        std::uint64_t h = 1;
        for (auto line : lines_of(text)) h = std::max(h, parse_u64(line));
        sidecar["horizon"] = h;
    }
    return intseq_from_text(text, sidecar);
}

Json to_json(const decomposer::Decomposition& d) {
    Json j;
    j["target"] = d.target;
    j["modulus"] = d.modulus;
    j["parts"] = d.parts;
    j["construction"] = construction_name(d.construction);
    j["p"] = d.p;
    j["mode"] = d.mode;
    if (d.construction == decomposer::Construction::Ruzsa) j["generator"] = d.generator;
    j["distinct"] = d.distinct;
    j["coordinates"] = d.coordinates;
    if (d.lift) {
        const auto& l = *d.lift;
        j["lift"] = {{"p", l.p}, {"K", l.K}, {"r1", l.r1}, {"r2", l.r2}, {"n", l.n}, {"N", l.N}};
    }
    return j;
}

decomposer::Decomposition decomposition_from_json(const Json& j) {
    decomposer::Decomposition d;
    const auto c = field<std::string>(j, "construction");
    if (c == "ruzsa") d.construction = decomposer::Construction::Ruzsa;
    else if (c == "erdos_turan") d.construction = decomposer::Construction::ErdosTuran;
    else parse_error("unknown construction '" + c + "'");
    d.target = field<std::uint64_t>(j, "target");
    d.modulus = field<std::uint64_t>(j, "modulus");
    d.parts = field<std::vector<std::uint64_t>>(j, "parts");
    d.p = field<std::uint64_t>(j, "p");
    d.mode = field<std::string>(j, "mode");
    if (j.contains("generator")) d.generator = field<std::uint64_t>(j, "generator");
    if (j.contains("distinct")) d.distinct = field<bool>(j, "distinct");
    if (j.contains("coordinates")) d.coordinates = field<std::vector<std::uint64_t>>(j, "coordinates");
    if (j.contains("lift")) {
        const auto& l = j.at("lift");
        d.lift = decomposer::LiftTarget{field<std::uint64_t>(l, "p"),  field<std::uint64_t>(l, "K"),
                                        field<std::uint64_t>(l, "r1"), field<std::uint64_t>(l, "r2"),
                                        field<std::uint64_t>(l, "n"),  field<std::uint64_t>(l, "N")};
    }
    return d;
}

std::string family_to_jsonl(const deletionlab::VectorFamily& family) {
    std::string out;
    for (const auto& t : family.members) {
        Json j;
        j["kind"] = std::string(deletionlab::to_string(family.kind));
        j["target"] = family.target;
        j["convention"] = family.convention();
        j["tuple"] = t;
        out += j.dump() + "\n";
    }
    return out;
}

deletionlab::VectorFamily family_from_jsonl(std::string_view text) {
    deletionlab::VectorFamily fam;
    bool first = true;
    for (auto line : lines_of(text)) {
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            parse_error(e.what());
        }
        auto tuple = j.is_array() ? j.get<deletionlab::Tuple>() : field<deletionlab::Tuple>(j, "tuple");
        if (first) {
            fam.kind = j.is_object() && j.contains("kind") ? deletionlab::parse_family_kind(j.at("kind").get<std::string>())
                                                          : deletionlab::FamilyKind::Custom;
            fam.target = j.is_object() && j.contains("target") ? j.at("target").get<std::int64_t>() : 0;
            fam.arity = static_cast<unsigned>(tuple.size());
            first = false;
        }
        if (tuple.size() != fam.arity) parse_error("tuples of mixed arity");
        fam.members.push_back(std::move(tuple));
    }
    return fam;
}

std::vector<deletionlab::Tuple> read_tuples(const std::filesystem::path& path) {
    const auto text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[' && text.find('\n', first) > text.find_last_of(']')) {
        try {
            return Json::parse(text).get<std::vector<deletionlab::Tuple>>();
        } catch (const nlohmann::json::exception& e) {
            parse_error(e.what());
        }
    }
    return family_from_jsonl(text).members;
}

Json to_json(const sunflower::SunflowerCert& cert, const std::vector<deletionlab::Tuple>& family) {
    Json j;
    j["petalIndices"] = cert.petal_indices;
    j["typeSet"] = cert.type_set;
    j["coreValues"] = cert.core_values;
    Json petals = Json::array();
    for (auto i : cert.petal_indices)
        if (i < family.size()) petals.push_back(family[i]);
    j["petals"] = petals;
    return j;
}

sunflower::SunflowerCert cert_from_json(const Json& j) {
    return {field<std::vector<std::size_t>>(j, "petalIndices"), field<std::vector<unsigned>>(j, "typeSet"),
            field<std::vector<std::uint64_t>>(j, "coreValues")};
}

std::string torus_to_csv(const curveoracle::QuadricSolutions& solutions) {
    const auto cloud = curveoracle::torus_points(solutions);
    Json meta;
    meta["p"] = solutions.params.p;
    meta["r1"] = solutions.params.r1;
    meta["r2"] = solutions.params.r2;
    meta["reducible"] = solutions.reducible;
    meta["points"] = cloud.points.size();
    std::string out = "# " + meta.dump() + "\n" + "t1,t2,t3,t4\n";
    const auto den = std::to_string(cloud.denominator);
    for (const auto& pt : cloud.points) {
        for (std::size_t i = 0; i < 4; ++i) {
            out += std::to_string(pt[i]) + "/" + den;
            out += i == 3 ? '\n' : ',';
        }
    }
    return out;
}

Json to_json(const analysis::RatioReport& report) {
    Json j;
    j["label"] = report.label;
    j["exponent"] = static_cast<double>(report.exponent);
    j["sup"] = static_cast<double>(report.sup);
    j["inf"] = static_cast<double>(report.inf);
    Json pts = Json::array();
    for (const auto& p : report.points)
        pts.push_back({{"n", p.n}, {"m", p.m}, {"value", static_cast<double>(p.value)},
                       {"normalized", static_cast<double>(p.normalized)}});
    j["points"] = pts;
    return j;
}

namespace {
std::string num(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
    return buf;
}
}  // namespace

std::string report_to_csv(const analysis::RatioReport& report) {
    std::string out = "n,m,value,normalized\n";
    for (const auto& p : report.points)
        out += std::to_string(p.n) + "," + std::to_string(p.m) + "," + num(p.value) + "," + num(p.normalized) + "\n";
    return out;
}

std::string rows_to_csv(const std::vector<analysis::McRow>& rows) {
    std::string out = "target,mean,stderr,normalized\n";
    for (const auto& r : rows)
        out += std::to_string(r.target) + "," + num(r.mean) + "," + num(r.stderr_) + "," + num(r.normalized) + "\n";
    return out;
}

PinFile PinFile::load(const std::filesystem::path& path) {
    PinFile f;
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        parse_error(e.what());
    }
    for (const auto& [name, v] : j.items()) f.pins_[name] = Pin{field<std::string>(v, "kind"), field<double>(v, "value")};
    return f;
}

void PinFile::save(const std::filesystem::path& path) const {
    Json j = Json::object();
    for (const auto& [name, pin] : pins_) j[name] = {{"kind", pin.kind}, {"value", pin.value}};
    write_file(path, j.dump(2) + "\n");
}

const Pin& PinFile::at(const std::string& name) const {
    const auto it = pins_.find(name);
    if (it == pins_.end()) throw Error(ErrorKind::InvalidArgument, "no pin named '" + name + "'");
    return it->second;
}

bool PinFile::check(const std::string& name, double measured) const {
    const auto& pin = at(name);
    if (!std::isfinite(measured)) return false;
    if (pin.kind == "min") return measured * 1.01 >= pin.value;
    if (pin.kind == "exact") return measured == pin.value;
    return measured <= pin.value * 1.01;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    out << contents;
}

}  // namespace sidonkit::io
