#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "hazardrate/countries.hpp"
#include "hazardrate/errors.hpp"
#include "hazardrate/ingestion.hpp"
#include "support/tempdata.hpp"

using namespace hazardrate;
using namespace hazardrate::ingest;
using testsupport::data_path;
using testsupport::TempFile;

namespace {

const CountryRegistry& registry() {
    static CountryRegistry reg = CountryRegistry::load(data_path("countries.csv"));
    return reg;
}

const GradeTable& grades() {
    static GradeTable t = GradeTable::load(data_path("grade_table.csv"));
    return t;
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::bad_config;
}

}  // namespace

TEST_CASE("grade table loads the full 21-step ladder") {
    CHECK(grades().size() == 21);
    CHECK(grades().rate_for("Aaa") == doctest::Approx(0.0046).epsilon(1e-12));
    CHECK(grades().rate_for("C") == doctest::Approx(0.28).epsilon(1e-12));
    CHECK(grades().rate_at(0) == grades().rate_for("Aaa"));
    for (std::size_t i = 1; i < grades().size(); ++i) {
        CHECK(grades().rate_at(i) > grades().rate_at(i - 1));
    }
    CHECK(code_of([] { grades().rate_for("ZZZ"); }) == Errc::unknown_grade);
    CHECK(code_of([] { grades().rate_at(21); }) == Errc::out_of_range);
}

TEST_CASE("grade table rejects broken ladders") {
    SUBCASE("wrong entry count") {
        TempFile f("grade,rate\nAaa,0.01\nAa1,0.02\n");
        CHECK(code_of([&] { GradeTable::load(f.path()); }) == Errc::bad_config);
    }
    SUBCASE("non-increasing rates") {
        std::string text = "grade,rate\n";
        for (int i = 0; i < 21; ++i) {
            text += "G" + std::to_string(i) + "," + (i == 7 ? "0.001" : "0." + std::to_string(10 + i)) + "\n";
        }
        TempFile f(text);
        CHECK(code_of([&] { GradeTable::load(f.path()); }) == Errc::bad_config);
    }
    SUBCASE("duplicate label") {
        std::string text = "grade,rate\n";
        for (int i = 0; i < 21; ++i) {
            text += std::string(i == 5 ? "G4" : "G" + std::to_string(i)) + ",0." +
                    std::to_string(100 + i) + "\n";
        }
        TempFile f(text);
        CHECK(code_of([&] { GradeTable::load(f.path()); }) == Errc::bad_config);
    }
}

TEST_CASE("the 7-point scale lands on the documented ladder entries") {
    const std::map<int, std::size_t> expected{{1, 0}, {2, 3},  {3, 7},  {4, 10},
                                              {5, 13}, {6, 17}, {7, 20}};
    for (const auto& [score, index] : expected) {
        CHECK(credendo_to_rate(score, grades()) == grades().rate_at(index));
    }
    for (int s = 2; s <= 7; ++s) {
        CHECK(credendo_to_rate(s, grades()) > credendo_to_rate(s - 1, grades()));
    }
    CHECK(code_of([] { credendo_to_rate(0, grades()); }) == Errc::out_of_range);
    CHECK(code_of([] { credendo_to_rate(8, grades()); }) == Errc::out_of_range);
}

TEST_CASE("spread file parses with exact pinned rows") {
    auto obs = parse_economic_source(data_path("fixtures/damodaran.csv"),
                                     EconSource::damodaran, registry());
    CHECK(obs.size() > 1000);
    bool found = false;
    for (const auto& o : obs) {
        CHECK(o.rate >= 0.0);
        CHECK(o.rate <= 1.0);
        if (o.iso3 == "ARG" && o.year == 2021) {
            found = true;
            CHECK(o.rate == doctest::Approx(0.169).epsilon(1e-12));
            CHECK(o.source == EconSource::damodaran);
        }
    }
    CHECK(found);
}

TEST_CASE("spread parser rejections") {
    SUBCASE("unknown country code") {
        TempFile f("iso3,year,rate\nXYZ,2020,0.05\n");
        CHECK(code_of([&] {
            parse_economic_source(f.path(), EconSource::damodaran, registry());
        }) == Errc::unknown_country);
    }
    SUBCASE("alpha-2 codes normalize") {
        TempFile f("iso3,year,rate\nAR,2020,0.05\n");
        auto obs = parse_economic_source(f.path(), EconSource::damodaran, registry());
        REQUIRE(obs.size() == 1);
        CHECK(obs[0].iso3 == "ARG");
    }
    SUBCASE("rate outside the unit interval") {
        TempFile f("iso3,year,rate\nARG,2020,1.5\n");
        CHECK(code_of([&] {
            parse_economic_source(f.path(), EconSource::damodaran, registry());
        }) == Errc::malformed_row);
    }
    SUBCASE("missing file") {
        CHECK(code_of([&] {
            parse_economic_source(data_path("fixtures/nope.csv"), EconSource::damodaran,
                                  registry());
        }) == Errc::io_error);
    }
}

TEST_CASE("letter grades and 7-point scores map through the ladder") {
    auto wiki = parse_economic_source(data_path("fixtures/wikirating.csv"),
                                      EconSource::wikirating, registry(), &grades());
    CHECK(wiki.size() == 40);
    for (const auto& o : wiki) {
        CHECK(o.year == kNoYear);
        CHECK(o.rate == grades().rate_for(o.raw));
    }

    auto cred = parse_economic_source(data_path("fixtures/credendo.csv"),
                                      EconSource::credendo, registry(), &grades());
    CHECK(cred.size() == 25);
    for (const auto& o : cred) {
        CHECK(o.rate == credendo_to_rate(std::stoi(o.raw), grades()));
    }

    SUBCASE("unknown grade is reported with its row") {
        TempFile f("iso3,grade\nXKX,NotAGrade\n");
        CHECK(code_of([&] {
            parse_economic_source(f.path(), EconSource::wikirating, registry(), &grades());
        }) == Errc::unknown_grade);
    }
    SUBCASE("score outside 1..7") {
        TempFile f("iso3,score\nAFG,9\n");
        CHECK(code_of([&] {
            parse_economic_source(f.path(), EconSource::credendo, registry(), &grades());
        }) == Errc::malformed_row);
    }
}

TEST_CASE("hazard report parses and validates") {
    auto wri = parse_wri(data_path("fixtures/wri.csv"), registry());
    CHECK(wri.size() == 192);
    double top = 0.0;
    std::string top_iso3;
    for (const auto& h : wri) {
        CHECK(h.wri >= 0.0);
        CHECK(h.wri <= 100.0);
        CHECK(h.source == HazardSource::wri);
        if (h.wri > top) {
            top = h.wri;
            top_iso3 = h.iso3;
        }
    }
    CHECK(top_iso3 == "PHL");

    TempFile f("iso3,year,score\nPHL,2023,146.9\n");
    CHECK(code_of([&] { parse_wri(f.path(), registry()); }) == Errc::malformed_row);
}

TEST_CASE("override file distinguishes donors from literal rates") {
    auto ov = parse_overrides(data_path("fixtures/overrides.csv"), registry());
    CHECK(ov.size() == 63);
    REQUIRE(ov.count("PGA") == 1);
    CHECK(ov.at("PGA").is_donor);
    CHECK(ov.at("PGA").donor == "VNM");
    REQUIRE(ov.count("PRK") == 1);
    CHECK_FALSE(ov.at("PRK").is_donor);
    CHECK(ov.at("PRK").rate == doctest::Approx(0.28).epsilon(1e-12));

    SUBCASE("self-donation rejected") {
        TempFile f("iso3,donor_iso3_or_rate\nPGA,PGA\n");
        CHECK(code_of([&] { parse_overrides(f.path(), registry()); }) == Errc::malformed_row);
    }
    SUBCASE("duplicate entries rejected") {
        TempFile f("iso3,donor_iso3_or_rate\nPGA,PHL\nPGA,AUS\n");
        CHECK(code_of([&] { parse_overrides(f.path(), registry()); }) == Errc::malformed_row);
    }
    SUBCASE("literal rate above 1 rejected") {
        TempFile f("iso3,donor_iso3_or_rate\nPGA,1.7\n");
        CHECK(code_of([&] { parse_overrides(f.path(), registry()); }) == Errc::malformed_row);
    }
}

namespace {

ResolvedRates resolve_fixtures() {
    auto dam = parse_economic_source(data_path("fixtures/damodaran.csv"),
                                     EconSource::damodaran, registry());
    auto wiki = parse_economic_source(data_path("fixtures/wikirating.csv"),
                                      EconSource::wikirating, registry(), &grades());
    auto cred = parse_economic_source(data_path("fixtures/credendo.csv"),
                                      EconSource::credendo, registry(), &grades());
    auto wri = parse_wri(data_path("fixtures/wri.csv"), registry());
    auto ov = parse_overrides(data_path("fixtures/overrides.csv"), registry());
    return resolve_rates(registry(), dam, wiki, cred, wri, ov);
}

}  // namespace

TEST_CASE("the bundled dataset resolves every country") {
    ResolvedRates res = resolve_fixtures();
    CHECK(res.econ.size() == registry().size());
    CHECK(res.hazard.size() == registry().size());
    for (const auto& cc : registry().all()) {
        REQUIRE(res.econ.count(cc.iso3) == 1);
        REQUIRE(res.hazard.count(cc.iso3) == 1);
        for (const auto& [_, rate] : res.econ.at(cc.iso3).samples) {
            CHECK(rate >= 0.0);
            CHECK(rate <= 1.0);
        }
    }

    // Provenance of each resolution path.
    CHECK(res.econ.at("ARG").source == EconSource::damodaran);
    CHECK(res.econ.at("ARG").samples.at(2021) == doctest::Approx(0.169));
    CHECK(res.econ.at("XKX").source == EconSource::wikirating);
    CHECK(res.econ.at("XKX").samples.size() == 1);
    CHECK(res.econ.at("XKX").samples.count(kNoYear) == 1);
    CHECK(res.econ.at("AFG").source == EconSource::credendo);

    // Donor override: the Spratly placeholder copies the Philippine records.
    CHECK(res.econ.at("PGA").source == EconSource::override_entry);
    CHECK(res.econ.at("PGA").samples == res.econ.at("VNM").samples);
    CHECK(res.hazard.at("PGA").source == HazardSource::neighbor_override);
    CHECK(res.hazard.at("PGA").wri == res.hazard.at("VNM").wri);
    CHECK(res.hazard.at("PHL").source == HazardSource::wri);

    // Literal override settles the economic side only; hazard is measured.
    CHECK(res.econ.at("PRK").source == EconSource::override_entry);
    CHECK(res.econ.at("PRK").samples.size() == 1);
    CHECK(res.econ.at("PRK").samples.at(kNoYear) == doctest::Approx(0.28));
    CHECK(res.hazard.at("PRK").source == HazardSource::wri);

    // Hazard-only donor: Greenland is rated but not hazard-scored.
    CHECK(res.econ.at("GRL").source == EconSource::wikirating);
    CHECK(res.hazard.at("GRL").source == HazardSource::neighbor_override);
    CHECK(res.hazard.at("GRL").wri == res.hazard.at("DNK").wri);
}

TEST_CASE("cascade order: spreads beat letter grades beat scores") {
    std::vector<RatingObservation> dam{{"ARG", EconSource::damodaran, 2020, "0.1", 0.1}};
    std::vector<RatingObservation> wiki{{"ARG", EconSource::wikirating, kNoYear, "C", 0.28}};
    std::vector<RatingObservation> cred{{"ARG", EconSource::credendo, kNoYear, "7", 0.28}};
    std::vector<HazardScore> wri;
    std::map<std::string, Override> ov;
    for (const auto& cc : registry().all()) {
        wri.push_back({cc.iso3, 10.0, 2023, HazardSource::wri});
        if (cc.iso3 != "ARG") {
            dam.push_back({cc.iso3, EconSource::damodaran, 2020, "0.05", 0.05});
        }
    }
    auto res = resolve_rates(registry(), dam, wiki, cred, wri, ov);
    CHECK(res.econ.at("ARG").source == EconSource::damodaran);
    CHECK(res.econ.at("ARG").samples.at(2020) == 0.1);

    auto res2 = resolve_rates(registry(), [&] {
        auto d = dam;
        d.erase(d.begin());  // drop ARG's spread row
        return d;
    }(), wiki, cred, wri, ov);
    CHECK(res2.econ.at("ARG").source == EconSource::wikirating);
}

TEST_CASE("hazard resolution keeps the latest report") {
    std::vector<RatingObservation> dam;
    std::vector<HazardScore> wri;
    std::map<std::string, Override> ov;
    for (const auto& cc : registry().all()) {
        dam.push_back({cc.iso3, EconSource::damodaran, 2020, "0.05", 0.05});
        wri.push_back({cc.iso3, 20.0, 2021, HazardSource::wri});
        wri.push_back({cc.iso3, 30.0, 2023, HazardSource::wri});
        wri.push_back({cc.iso3, 25.0, 2022, HazardSource::wri});
    }
    auto res = resolve_rates(registry(), dam, {}, {}, wri, ov);
    CHECK(res.hazard.at("ARG").wri == 30.0);
    CHECK(res.hazard.at("ARG").year == 2023);
}

TEST_CASE("unresolved countries abort with the complete list") {
    auto dam = parse_economic_source(data_path("fixtures/damodaran.csv"),
                                     EconSource::damodaran, registry());
    auto wiki = parse_economic_source(data_path("fixtures/wikirating.csv"),
                                      EconSource::wikirating, registry(), &grades());
    auto cred = parse_economic_source(data_path("fixtures/credendo.csv"),
                                      EconSource::credendo, registry(), &grades());
    auto wri = parse_wri(data_path("fixtures/wri.csv"), registry());
    try {
        resolve_rates(registry(), dam, wiki, cred, wri, {});
        FAIL("expected UnresolvedCountriesError");
    } catch (const UnresolvedCountriesError& e) {
        CHECK(e.code() == Errc::unresolved_country);
        CHECK(e.countries().size() == 63);
        std::set<std::string> listed(e.countries().begin(), e.countries().end());
        CHECK(listed.count("PGA") == 1);   // no economic source
        CHECK(listed.count("PRK") == 1);   // no economic source
        CHECK(listed.count("GRL") == 1);   // no hazard score
        CHECK(listed.count("ARG") == 0);
    }
}

TEST_CASE("base-year adjustment compounds inflation") {
    std::map<int, double> series{{2022, 0.10}, {2023, 0.10}};
    CHECK(adjust_to_base_year(100.0, 2023, series) == 100.0);
    CHECK(adjust_to_base_year(100.0, 2021, series) == doctest::Approx(121.0).epsilon(1e-12));

    std::map<int, double> deflation{{2023, -0.02}};
    CHECK(adjust_to_base_year(100.0, 2022, deflation) == doctest::Approx(98.0).epsilon(1e-12));

    CHECK(code_of([&] { adjust_to_base_year(100.0, 2019, series); }) == Errc::missing_year);
    CHECK(code_of([&] { adjust_to_base_year(100.0, 2024, series); }) == Errc::out_of_range);
}

TEST_CASE("inflation file parses") {
    auto inf = parse_inflation(data_path("inflation.csv"));
    CHECK(inf.size() == 10);
    CHECK(inf.at(2021) == doctest::Approx(0.047));

    TempFile dup("year,rate\n2020,0.01\n2020,0.02\n");
    CHECK(code_of([&] { parse_inflation(dup.path()); }) == Errc::malformed_row);
}

TEST_CASE("regional costs average multi-row regions") {
    auto inflation = parse_inflation(data_path("inflation.csv"));
    auto regions = RegionCostTable::load(data_path("regions.csv"),
                                         data_path("country_regions.csv"), registry(),
                                         inflation);
    const RegionCost& europe = regions.for_region("Europe");
    CHECK(europe.wind_capex == doctest::Approx(1614.0).epsilon(1e-12));
    CHECK(europe.pv_capex == doctest::Approx(427.0).epsilon(1e-12));
    CHECK(europe.wind_opex == doctest::Approx(0.026).epsilon(1e-12));
    CHECK(europe.pv_opex == doctest::Approx(0.029).epsilon(1e-12));
    CHECK(regions.region_of("DEU") == "Europe");
    CHECK(regions.for_country("DEU").wind_capex == europe.wind_capex);
    CHECK(regions.region_of("CHN") == "China");
    CHECK(regions.for_country("JPN").wind_capex == doctest::Approx(3185.0));

    // Every registry country must be assigned; the loader enforces totality.
    for (const auto& cc : registry().all()) {
        CHECK(regions.for_country(cc.iso3).wind_capex > 0.0);
    }
}

TEST_CASE("regional cost validation") {
    auto inflation = parse_inflation(data_path("inflation.csv"));
    SUBCASE("pre-base-year rows are inflated to the base year") {
        TempFile regions(
            "region,wind_capex,pv_capex,wind_opex,pv_opex,year\n"
            "Everywhere,100,50,0.02,0.03,2021\n");
        TempFile assign([] {
            std::string text = "iso3,region\n";
            const CountryRegistry& reg = CountryRegistry::load(data_path("countries.csv"));
            for (const auto& cc : reg.all()) text += cc.iso3 + ",Everywhere\n";
            return text;
        }());
        std::map<int, double> series{{2022, 0.10}, {2023, 0.10}};
        auto t = RegionCostTable::load(regions.path(), assign.path(), registry(), series);
        CHECK(t.for_region("Everywhere").wind_capex == doctest::Approx(121.0).epsilon(1e-12));
        CHECK(t.for_region("Everywhere").pv_capex == doctest::Approx(60.5).epsilon(1e-12));
    }
    SUBCASE("unassigned countries are an error") {
        TempFile regions(
            "region,wind_capex,pv_capex,wind_opex,pv_opex\nEverywhere,100,50,0.02,0.03\n");
        TempFile assign("iso3,region\nARG,Everywhere\n");
        CHECK(code_of([&] {
            RegionCostTable::load(regions.path(), assign.path(), registry(), inflation);
        }) == Errc::bad_config);
    }
    SUBCASE("assignment to an unlisted region is an error") {
        TempFile regions(
            "region,wind_capex,pv_capex,wind_opex,pv_opex\nEverywhere,100,50,0.02,0.03\n");
        TempFile assign([] {
            std::string text = "iso3,region\n";
            const CountryRegistry& reg = CountryRegistry::load(data_path("countries.csv"));
            for (const auto& cc : reg.all()) text += cc.iso3 + ",Everywhere\n";
            return text + "ARG,Atlantis\n";
        }());
        CHECK(code_of([&] {
            RegionCostTable::load(regions.path(), assign.path(), registry(), inflation);
        }) == Errc::bad_config);
    }
}

TEST_CASE("technology table resolves per-country rows") {
    auto inflation = parse_inflation(data_path("inflation.csv"));
    auto regions = RegionCostTable::load(data_path("regions.csv"),
                                         data_path("country_regions.csv"), registry(),
                                         inflation);
    auto techs = TechnologyTable::load(data_path("technologies.csv"));

    auto deu = techs.for_country("DEU", regions);
    CHECK(deu.ely.capex == doctest::Approx(470.0));
    CHECK(deu.ely.opex_frac == doctest::Approx(0.03));
    CHECK(deu.ely.lifetime == 10);
    CHECK(deu.ely.efficiency == doctest::Approx(0.7));
    CHECK(deu.storage.capex == doctest::Approx(20.0));
    CHECK(deu.storage.opex_frac == doctest::Approx(0.02));
    CHECK(deu.storage.lifetime == 30);
    CHECK(deu.storage.charge_eff == doctest::Approx(0.98));
    CHECK(deu.storage.discharge_eff == doctest::Approx(0.998));
    CHECK(deu.wind.capex == doctest::Approx(1614.0));
    CHECK(deu.wind.opex_frac == doctest::Approx(0.026));
    CHECK(deu.wind.lifetime == 20);
    CHECK(deu.pv.capex == doctest::Approx(427.0));
    CHECK(deu.pv.lifetime == 20);

    // The one per-country exception in the bundled table.
    auto chn = techs.for_country("CHN", regions);
    CHECK(chn.ely.capex == doctest::Approx(330.0));
    CHECK(chn.wind.capex == doctest::Approx(999.0));

    SUBCASE("a global row per technology is mandatory") {
        TempFile f(
            "tech,iso3,capex,opex_frac,lifetime,efficiency,charge_eff,discharge_eff\n"
            "wind,,,,20,,,\n");
        CHECK(code_of([&] { TechnologyTable::load(f.path()); }) == Errc::bad_config);
    }
    SUBCASE("duplicate scope rejected") {
        TempFile f(
            "tech,iso3,capex,opex_frac,lifetime,efficiency,charge_eff,discharge_eff\n"
            "wind,,,,20,,,\npv,,,,20,,,\n"
            "electrolysis,,470,0.03,10,0.7,,\nstorage,,20,0.02,30,,0.98,0.998\n"
            "electrolysis,CHN,330,0.03,10,0.7,,\nelectrolysis,CHN,340,0.03,10,0.7,,\n");
        CHECK(code_of([&] { TechnologyTable::load(f.path()); }) == Errc::malformed_row);
    }
}

TEST_CASE("potentials and profiles parse") {
    auto pot = parse_potentials(data_path("fixtures/potentials.csv"), registry());
    CHECK(pot.size() == registry().size());
    for (const auto& [_, v] : pot) CHECK(v > 0.0);

    auto prof = parse_profile(data_path("fixtures/profiles/default.csv"));
    CHECK(prof.wind.values.size() == 48);
    CHECK(prof.pv.values.size() == 48);
    for (std::size_t t = 0; t < 48; ++t) {
        CHECK(prof.wind.values[t] >= 0.0);
        CHECK(prof.wind.values[t] <= 1.0);
        CHECK(prof.pv.values[t] >= 0.0);
        CHECK(prof.pv.values[t] <= 1.0);
    }

    SUBCASE("steps must be consecutive from zero") {
        TempFile f("step,cf_wind,cf_pv\n0,0.5,0.5\n2,0.5,0.5\n");
        CHECK(code_of([&] { parse_profile(f.path()); }) == Errc::malformed_row);
    }
    SUBCASE("factors above one rejected") {
        TempFile f("step,cf_wind,cf_pv\n0,1.5,0.5\n");
        CHECK(code_of([&] { parse_profile(f.path()); }) == Errc::malformed_row);
    }
    SUBCASE("empty profile rejected") {
        TempFile f("step,cf_wind,cf_pv\n");
        CHECK(code_of([&] { parse_profile(f.path()); }) == Errc::empty_input);
    }
    SUBCASE("negative potential rejected") {
        TempFile f("iso3,total_potential_kg\nARG,-5\n");
        CHECK(code_of([&] { parse_potentials(f.path(), registry()); }) == Errc::malformed_row);
    }
}
