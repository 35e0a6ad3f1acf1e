#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "specfrac/zeta.hpp"

using namespace specfrac;
using namespace testutil;

namespace {
const double kD = std::log(2.0) / std::log(3.0);

Spectrum external_from_gaps(const GapList& gaps) {
    Spectrum s;
    s.kind = TripleKind::external;
    for (const auto& g : gaps) s.entries.push_back({g.length, 2.0 * g.count});
    return s;
}
} // namespace

TEST_CASE("zeta partial sums against the self-similar closed forms") {
    auto cantor = cantor_spec();
    std::vector<int> p(42, 2);
    std::vector<double> lambda(42, 1.0 / 3.0);

    auto fil = symmetric_spectrum(p, lambda, 1, 1.0, TripleKind::filled, 40);
    auto zf = zeta_partial(fil, 1.0, fil.total_multiplicity());
    CHECK(zf.partial == doctest::Approx(6.0).epsilon(1e-6));
    REQUIRE(zf.tail_bound.has_value());
    CHECK(zf.partial <= 6.0);
    CHECK(zf.partial + *zf.tail_bound >= 6.0 - 1e-9);
    CHECK(zf.converged == Summability::summable);

    auto lac = symmetric_spectrum(p, lambda, 1, 1.0, TripleKind::lacunary, 40);
    auto zl = zeta_partial(lac, 1.0, lac.total_multiplicity());
    CHECK(zl.partial == doctest::Approx(2.0).epsilon(1e-6));

    CHECK(zeta_partial(lac, 1.0, 0.0).partial == 0.0);
}

TEST_CASE("abscissa by bisection") {
    SUBCASE("Cantor, all three kinds") {
        auto cantor = cantor_spec();
        for (TripleKind kind : {TripleKind::lacunary, TripleKind::filled, TripleKind::full}) {
            auto res = abscissa(spectrum(cantor, kind, 20), 0.2, 1.2, 1e-3);
            CHECK(res.d == doctest::Approx(kD).epsilon(0.016));
        }
    }
    SUBCASE("a-string gaps sit at 1/2") {
        auto res = abscissa(external_from_gaps(a_string_gaps(200000)), 0.2, 1.2, 1e-3);
        CHECK(res.d == doctest::Approx(0.5).epsilon(0.02));
    }
    SUBCASE("geometric spectrum collapses to the bracket floor") {
        Spectrum geo;
        geo.kind = TripleKind::external;
        for (int n = 1; n <= 600; ++n)
            geo.entries.push_back({std::pow(2.0, -0.1 * n), 1.0});
        auto res = abscissa(geo, 0.2, 1.0, 1e-3);
        CHECK(res.d <= 0.2 + 1e-12);
    }
    SUBCASE("bracket below the abscissa is rejected") {
        auto s = spectrum(cantor_spec(), TripleKind::lacunary, 20);
        CHECK_THROWS_AS(abscissa(s, 0.1, 0.3, 1e-3), validation_error);
    }
}

TEST_CASE("selfsimilar_report closed forms") {
    auto rep = selfsimilar_report(cantor_spec());
    CHECK(rep.dimension == doctest::Approx(0.6309297535714574).epsilon(1e-9));
    REQUIRE(rep.gap_lengths.size() == 1);
    CHECK(rep.gap_lengths[0] == doctest::Approx(1.0 / 3));
    CHECK(rep.zeta_l_residue == doctest::Approx(1.0 / std::log(3.0)).epsilon(1e-9));
    CHECK(rep.zeta_f_residue == doctest::Approx(2.0 / std::log(3.0)).epsilon(1e-9));

    CHECK(zeta_filled_closed(rep, 1.0, 1.0) == doctest::Approx(6.0));
    CHECK(zeta_lacunary_closed(rep, 1.0) == doctest::Approx(2.0));

    auto two = selfsimilar_report(two_ratio_spec());
    double q = std::pow(0.5, two.dimension) + std::pow(0.25, two.dimension);
    CHECK(q == doctest::Approx(1.0).epsilon(1e-11));

    CHECK_THROWS_AS(selfsimilar_report(alternating_spec()), validation_error);
}

TEST_CASE("symmetric dimension and delta window formulas") {
    SUBCASE("constant sequences collapse to one point") {
        auto r = symmetric_dimension_and_delta({2}, {1.0 / 3.0}, 1);
        CHECK(r.d == doctest::Approx(kD).epsilon(1e-12));
        REQUIRE(r.delta_lower.has_value());
        CHECK(*r.delta_lower == doctest::Approx(kD).epsilon(1e-12));
        CHECK(*r.delta_upper == doctest::Approx(kD).epsilon(1e-12));
    }
    SUBCASE("alternating example, exact by period rotation") {
        auto r = symmetric_dimension_and_delta({2, 3}, {0.25, 1.0 / 6.0}, 2);
        CHECK(r.d == doctest::Approx(std::log(6.0) / std::log(24.0)).epsilon(1e-9));
        REQUIRE(r.delta_lower.has_value());
        CHECK(*r.delta_lower == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(*r.delta_upper ==
              doctest::Approx(std::log(3.0) / std::log(6.0)).epsilon(1e-12));
        CHECK(*r.delta_lower <= r.d);
        CHECK(r.d <= *r.delta_upper);
    }
    SUBCASE("uniform generation guard withholds delta") {
        std::vector<int> p(30, 2);
        std::vector<double> lambda;
        for (int n = 1; n <= 30; ++n) lambda.push_back(0.5 - 0.125 / n);
        auto r = symmetric_dimension_and_delta(p, lambda, 0);
        CHECK(!r.delta_lower.has_value());
        CHECK(!r.withheld_reason.empty());
        CHECK(r.d > 0.9);
    }
}

TEST_CASE("abscissa consistency laws") {
    auto cantor = cantor_spec();
    SUBCASE("full = max(lacunary, filled)") {
        double dl = abscissa(spectrum(cantor, TripleKind::lacunary, 20), 0.2, 1.2, 1e-3).d;
        double df = abscissa(spectrum(cantor, TripleKind::filled, 20), 0.2, 1.2, 1e-3).d;
        double du = abscissa(spectrum(cantor, TripleKind::full, 20), 0.2, 1.2, 1e-3).d;
        CHECK(du == doctest::Approx(std::max(dl, df)).epsilon(0.02));
    }
    SUBCASE("box dimension agrees for zero-measure specs") {
        WindowPolicy pol;
        for (const auto& spec : {cantor_spec(), alternating_spec(), two_ratio_spec()}) {
            double box = box_dim_from_gaps(gap_list(spec, 18), pol);
            double d = abscissa(spectrum(spec, TripleKind::lacunary, 18), 0.2, 1.2, 1e-3).d;
            CHECK(box == doctest::Approx(d).epsilon(0.033));
        }
    }
    SUBCASE("tensor abscissa is subadditive") {
        auto s = spectrum(cantor, TripleKind::lacunary, 16);
        auto t = tensor_spectrum(s, s, 5e-8);
        double dt = abscissa(t, 0.8, 2.0, 2e-3).d;
        CHECK(dt <= 2 * kD + 0.02);
    }
}
