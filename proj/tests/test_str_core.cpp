#include <random>

#include "doctest.h"
#include "kindred/errors.hpp"
#include "kindred/rng.hpp"
#include "kindred/str_core.hpp"

using namespace kindred;

TEST_CASE("expand_allele repeats the motif") {
    CHECK(expand_allele("GATA", Allele{6}) == "GATAGATAGATAGATAGATAGATA");
    CHECK(expand_allele("AT", Allele{0}) == "");
    CHECK(expand_allele("TATC", Allele{8}) == "TATCTATCTATCTATCTATCTATCTATCTATC");
}

TEST_CASE("expand_allele microvariants take a prefix of the motif") {
    CHECK(expand_allele("AAGG", Allele{2, 2}) == "AAGGAAGGAA");
    CHECK(expand_allele("AAGG", Allele{0, 3}) == "AAG");
}

TEST_CASE("expand_allele rejects bad input") {
    CHECK_THROWS_AS(expand_allele("GAXA", Allele{3}), ValidationError);
    CHECK_THROWS_AS(expand_allele("gata", Allele{3}), ValidationError);
    CHECK_THROWS_AS(expand_allele("AT", Allele{3, 2}), ValidationError);
    CHECK_THROWS_AS(expand_allele("A", Allele{3}), ValidationError);       // below 2 bases
    CHECK_THROWS_AS(expand_allele("AACCGGT", Allele{3}), ValidationError); // above 6
}

TEST_CASE("expand_allele length law") {
    auto rng = make_rng(11, "expand-length");
    const std::string bases = "ACGT";
    std::uniform_int_distribution<int> motif_len(2, 6), base(0, 3), repeats(0, 40);
    for (int t = 0; t < 200; ++t) {
        std::string motif;
        int len = motif_len(rng);
        for (int i = 0; i < len; ++i) motif.push_back(bases[base(rng)]);
        std::uniform_int_distribution<int> partial(0, len - 1);
        Allele a{repeats(rng), partial(rng)};
        CHECK(expand_allele(motif, a).size() ==
              static_cast<std::size_t>(a.full_repeats * len + a.partial_bases));
    }
}

namespace {

StrProfile make_profile(std::initializer_list<std::tuple<const char*, const char*, int, int>> rows) {
    StrProfile p;
    for (auto& [name, motif, a, b] : rows)
        p.add(Marker{name, motif}, GenotypePair(Allele{a}, Allele{b}));
    return p;
}

}  // namespace

TEST_CASE("paternity consistency on the published five-marker table") {
    auto child = make_profile({{"D21S11", "TCTA", 28, 31},
                               {"D7S820", "GATA", 10, 11},
                               {"TH01", "AATG", 14, 16},
                               {"D13S317", "TATC", 7, 9},
                               {"D19S433", "AAGG", 14, 15}});
    auto father = make_profile({{"D21S11", "TCTA", 29, 31},
                                {"D7S820", "GATA", 11, 12},
                                {"TH01", "AATG", 15, 16},
                                {"D13S317", "TATC", 8, 9},
                                {"D19S433", "AAGG", 15, 17}});
    auto result = paternity_consistent(child, father);
    CHECK(result.overall);
    for (const auto& [name, ok] : result.per_marker) CHECK(ok);
}

TEST_CASE("paternity consistency single-marker cases") {
    auto child_99 = make_profile({{"X", "AATG", 9, 9}});
    auto mother = make_profile({{"X", "AATG", 10, 12}});
    CHECK_FALSE(paternity_consistent(child_99, mother).overall);

    auto child_10_14 = make_profile({{"X", "AATG", 10, 14}});
    CHECK(paternity_consistent(child_10_14, mother).overall);

    auto child_11_14 = make_profile({{"X", "AATG", 11, 14}});
    CHECK_FALSE(paternity_consistent(child_11_14, mother).overall);
}

TEST_CASE("paternity per-marker result is symmetric") {
    auto rng = make_rng(5, "paternity-symmetry");
    std::uniform_int_distribution<int> allele(6, 14);
    for (int t = 0; t < 100; ++t) {
        auto a = make_profile({{"M1", "TCTA", allele(rng), allele(rng)},
                               {"M2", "GATA", allele(rng), allele(rng)}});
        auto b = make_profile({{"M1", "TCTA", allele(rng), allele(rng)},
                               {"M2", "GATA", allele(rng), allele(rng)}});
        CHECK(paternity_consistent(a, b).per_marker == paternity_consistent(b, a).per_marker);
    }
}

TEST_CASE("paternity rejects mismatched marker sets") {
    auto a = make_profile({{"M1", "TCTA", 9, 10}});
    auto b = make_profile({{"M2", "GATA", 9, 10}});
    CHECK_THROWS_WITH_AS(paternity_consistent(a, b),
                         doctest::Contains("M1"), ValidationError);
}

TEST_CASE("possible_children enumerates the cross product") {
    auto kids = possible_children(GenotypePair(Allele{10}, Allele{12}),
                                  GenotypePair(Allele{9}, Allele{14}));
    std::set<GenotypePair> expected{
        GenotypePair(Allele{9}, Allele{10}), GenotypePair(Allele{9}, Allele{12}),
        GenotypePair(Allele{10}, Allele{14}), GenotypePair(Allele{12}, Allele{14})};
    CHECK(kids == expected);

    auto homo = possible_children(GenotypePair(Allele{7}, Allele{7}),
                                  GenotypePair(Allele{8}, Allele{8}));
    CHECK(homo == std::set<GenotypePair>{GenotypePair(Allele{7}, Allele{8})});
}

TEST_CASE("possible_children cardinality and consistency, exhaustively") {
    for (int m1 = 5; m1 <= 8; ++m1)
        for (int m2 = 5; m2 <= 8; ++m2)
            for (int f1 = 5; f1 <= 8; ++f1)
                for (int f2 = 5; f2 <= 8; ++f2) {
                    GenotypePair mother(Allele{m1}, Allele{m2});
                    GenotypePair father(Allele{f1}, Allele{f2});
                    auto kids = possible_children(mother, father);
                    CHECK(kids.size() >= 1);
                    CHECK(kids.size() <= 4);
                    for (const auto& kid : kids) {
                        CHECK(kid.shares_allele(mother));
                        CHECK(kid.shares_allele(father));
                    }
                }
}

TEST_CASE("profile parsing") {
    auto profile = parse_profile(R"({"markers":[
        {"name":"D21S11","motif":"TCTA","alleles":["29","31"]},
        {"name":"D19S433","motif":"AAGG","alleles":["14","16.2"]}]})");
    CHECK(profile.size() == 2);
    CHECK(profile.find("D21S11")->pair == GenotypePair(Allele{29}, Allele{31}));
    CHECK(profile.find("D19S433")->pair.second == Allele{16, 2});

    CHECK(parse_profile(R"({"markers":[]})").empty());
    CHECK_THROWS_AS(parse_profile(R"({"markers":[
        {"name":"TH01","motif":"AATG","alleles":["6","7"]},
        {"name":"TH01","motif":"AATG","alleles":["6","7"]}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_profile("not json"), ParseError);
    CHECK_THROWS_AS(parse_profile(R"({"markers":[{"name":"X","motif":"QQ","alleles":["1","2"]}]})"),
                    ValidationError);
}

TEST_CASE("serialize/parse round trip on generated profiles") {
    auto rng = make_rng(99, "profile-roundtrip");
    auto panel = default_panel();
    std::uniform_int_distribution<int> repeats(5, 30);
    std::uniform_int_distribution<int> count(1, static_cast<int>(panel.size()));
    for (int t = 0; t < 50; ++t) {
        StrProfile p;
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            std::uniform_int_distribution<int> partial(0, static_cast<int>(panel[i].motif.size()) - 1);
            p.add(panel[i], GenotypePair(Allele{repeats(rng), partial(rng)}, Allele{repeats(rng)}));
        }
        std::string canonical = serialize_profile(p);
        CHECK(serialize_profile(parse_profile(canonical)) == canonical);
    }
}

TEST_CASE("default panel holds sixteen loci with the named ten first") {
    auto panel = default_panel();
    REQUIRE(panel.size() == 16);
    CHECK(panel[0].name == "D8S1179");
    CHECK(panel[1].name == "D21S11");
    CHECK(panel[5].name == "TH01");
    for (const auto& m : panel) validate_motif(m.motif);
}
