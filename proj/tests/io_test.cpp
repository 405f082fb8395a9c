#include <gtest/gtest.h>

#include <filesystem>

#include "sidonkit/error.hpp"
#include "sidonkit/io.hpp"
#include "sidonkit/randommodel.hpp"
#include "sidonkit/sidoncore.hpp"

using namespace sidonkit;
using namespace sidonkit::io;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("sidonkit_io_" + name);
}

}  // namespace

TEST(Io, Fnv1aKnownValues) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
    Json a = {{"x", 1}, {"y", "2/3"}};
    EXPECT_EQ(config_hash(a), config_hash(Json::parse(a.dump())));
    EXPECT_NE(config_hash(a), config_hash(Json{{"x", 2}, {"y", "2/3"}}));
    EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Io, ModSetRoundTrips) {
    const auto s = sidoncore::ruzsa_set(13, 2);
    EXPECT_EQ(modset_from_json(to_json(s)), s);
    EXPECT_EQ(modset_from_text(modset_to_text(s)), s);
    EXPECT_EQ(to_json(ModSet(10, {3, 1})).dump(), R"({"modulus":10,"elements":[1,3]})");
    EXPECT_EQ(modset_to_text(ModSet(10, {3, 1})), "mod 10\n1\n3\n");
    EXPECT_EQ(modset_from_text("mod 7\r\n 2\n\n5\n"), ModSet(7, {2, 5}));
    EXPECT_THROW(modset_from_text("7\n1\n"), Error);
    EXPECT_THROW(modset_from_text("mod 7\nx\n"), Error);
    EXPECT_THROW(modset_from_json(Json{{"modulus", 7}}), Error);

    const auto path = temp_path("set.txt");
    write_file(path, modset_to_text(s));
    EXPECT_EQ(read_modset(path), s);
    write_file(path, to_json(s).dump());
    EXPECT_EQ(read_modset(path), s);
    std::filesystem::remove(path);
}

TEST(Io, IntSeqWithSidecar) {
    SampleConfig cfg;
    cfg.gamma = Rational(7, 11);
    cfg.m = 10;
    cfg.residues = sidoncore::ruzsa_set(7, 3);
    cfg.horizon = 50000;
    cfg.seed = 77;
    const auto A = randommodel::sample_sequence(cfg);
    const auto path = temp_path("seq.txt");
    write_intseq(path, A);
    const auto B = read_intseq(path);
    EXPECT_EQ(A, B);
    auto sidecar = Json::parse(read_file(path.string() + ".json"));
    EXPECT_EQ(sidecar["configHash"], config_hash(to_json(cfg)));
    sidecar["config"]["seed"] = 78;
    EXPECT_THROW(intseq_from_text(intseq_to_text(A), sidecar), Error);
    std::filesystem::remove(path.string() + ".json");
    const auto bare = read_intseq(path);
    EXPECT_FALSE(bare.provenance().has_value());
    EXPECT_TRUE(std::equal(bare.elements().begin(), bare.elements().end(), A.elements().begin(), A.elements().end()));
    std::filesystem::remove(path);
}

TEST(Io, ConfigRoundTrip) {
    SampleConfig cfg;
    cfg.gamma = Rational(19, 27);
    cfg.m = 3;
    cfg.horizon = 99;
    cfg.seed = 5;
    EXPECT_EQ(config_from_json(to_json(cfg)), cfg);
    EXPECT_EQ(to_json(cfg)["gamma"], "19/27");
}

TEST(Io, DecompositionRoundTrip) {
    const auto d = decomposer::decompose3_ruzsa(13, 2, 5, 7, true);
    const auto j = to_json(d);
    EXPECT_EQ(j["construction"], "ruzsa");
    EXPECT_EQ(j["modulus"], 156);
    const auto back = decomposition_from_json(j);
    EXPECT_TRUE(decomposer::replay(back));
    EXPECT_EQ(to_json(back), j);

    EXPECT_THROW(decomposer::decompose3_ZN(123, 700, decomposer::Search::Exhaustive), Error);
    const auto z = decomposer::decompose3_ZN(100, 700, decomposer::Search::Exhaustive);
    const auto zb = decomposition_from_json(to_json(z));
    EXPECT_TRUE(decomposer::replay(zb));
    EXPECT_EQ(to_json(zb), to_json(z));
    auto broken = to_json(z);
    broken["parts"][0] = broken["parts"][0].get<std::uint64_t>() + 1;
    EXPECT_FALSE(decomposer::replay(decomposition_from_json(broken)));
}

TEST(Io, FamilyJsonLines) {
    const auto fam = deletionlab::enumerate_family(IntSeq({1, 2, 4}, 4), {deletionlab::FamilyKind::U2, 6, 1, std::nullopt});
    const auto text = family_to_jsonl(fam);
    EXPECT_EQ(text, "{\"kind\":\"U2\",\"target\":6,\"convention\":\"ordered-tuple\",\"tuple\":[2,4]}\n"
                    "{\"kind\":\"U2\",\"target\":6,\"convention\":\"ordered-tuple\",\"tuple\":[4,2]}\n");
    const auto back = family_from_jsonl(text);
    EXPECT_EQ(back.members, fam.members);
    EXPECT_EQ(back.kind, deletionlab::FamilyKind::U2);
    EXPECT_EQ(family_from_jsonl("[1,2]\n[3,4]\n").members, (std::vector<deletionlab::Tuple>{{1, 2}, {3, 4}}));
    EXPECT_THROW(family_from_jsonl("[1,2]\n[3]\n"), Error);
}

TEST(Io, SunflowerCertificate) {
    const std::vector<deletionlab::Tuple> fam{{1, 2}, {3, 4}};
    const sunflower::SunflowerCert cert{{0, 1}, {}, {}};
    const auto j = to_json(cert, fam);
    EXPECT_EQ(j.dump(), R"({"petalIndices":[0,1],"typeSet":[],"coreValues":[],"petals":[[1,2],[3,4]]})");
    const auto back = cert_from_json(j);
    EXPECT_EQ(back.petal_indices, cert.petal_indices);
}

TEST(Io, TorusCsv) {
    const auto sols = curveoracle::enumerate_quadric(curveoracle::QuadricParams{13, 1, 9});
    const auto csv = torus_to_csv(sols);
    EXPECT_EQ(csv.substr(0, 2), "# ");
    const auto nl = csv.find('\n');
    const auto meta = Json::parse(csv.substr(2, nl - 2));
    EXPECT_EQ(meta["p"], 13);
    EXPECT_EQ(meta["reducible"], true);
    EXPECT_EQ(csv.substr(nl + 1, 12), "t1,t2,t3,t4\n");
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 2 + sols.points.size());
}

TEST(Io, ReportsAndPins) {
    analysis::RatioReport r;
    r.points = {{10, 0, 1.5L, 3.0L}};
    EXPECT_EQ(report_to_csv(r), "n,m,value,normalized\n10,0,1.5,3\n");
    EXPECT_EQ(rows_to_csv({{7, 0.5L, 0.25L, 1}}), "target,mean,stderr,normalized\n7,0.5,0.25,1\n");

    PinFile pins;
    pins.set("a", {"max", 2.0});
    pins.set("b", {"min", 1.0});
    pins.set("n", {"exact", 328});
    const auto path = temp_path("pins.json");
    pins.save(path);
    const auto loaded = PinFile::load(path);
    EXPECT_TRUE(loaded.check("a", 2.019));
    EXPECT_FALSE(loaded.check("a", 2.03));
    EXPECT_TRUE(loaded.check("b", 0.991));
    EXPECT_FALSE(loaded.check("b", 0.98));
    EXPECT_TRUE(loaded.check("n", 328));
    EXPECT_FALSE(loaded.check("n", 329));
    EXPECT_THROW(loaded.check("c", 1.0), Error);
    std::filesystem::remove(path);
}
