#include <doctest.h>

#include <cmath>
#include <limits>

#include "pbtk/report.hpp"

using pbtk::Json;
using pbtk::VerificationReport;

TEST_CASE("an entry passes exactly when the residual is within tolerance") {
    VerificationReport r;
    CHECK(r.add("equal", 1e-10, 1e-10));
    CHECK(r.add("below", 0.0, 0.0));
    CHECK_FALSE(r.add("above", 2e-10, 1e-10));
    CHECK_FALSE(r.add("nan", std::nan(""), 1.0));
    CHECK_FALSE(r.add("inf", std::numeric_limits<double>::infinity(), 1.0));
    auto s = r.summary();
    CHECK(s.total == 5);
    CHECK(s.passed == 2);
    CHECK(s.failed == 3);
    CHECK_FALSE(r.all_passed());
}

TEST_CASE("lookup and prefix maxima") {
    VerificationReport r;
    r.add("x.one", 1e-3, 1.0);
    r.add("x.two", 5e-3, 1.0);
    r.add("y.one", 1.0, 2.0);
    REQUIRE(r.find("x.two") != nullptr);
    CHECK(r.find("x.two")->residual == 5e-3);
    CHECK(r.find("missing") == nullptr);
    CHECK(r.max_residual("x.") == 5e-3);
    CHECK(r.all_passed());
}

TEST_CASE("merge keeps order and warnings") {
    VerificationReport a, b;
    a.add("a", 0, 1);
    b.add("b", 0, 1);
    b.warn("careful");
    a.merge(b);
    REQUIRE(a.entries().size() == 2);
    CHECK(a.entries()[1].check == "b");
    REQUIRE(a.warnings().size() == 1);
    CHECK(a.warnings()[0] == "careful");
}

TEST_CASE("JSON round trip preserves entries, context and warnings") {
    VerificationReport r;
    r.add("first", 1.25e-11, 1e-10, Json{{"n", 3}});
    r.add("second", 0.5, 0.1);
    r.warn("condition number high");
    Json j = r.to_json();
    auto back = VerificationReport::from_json(j);
    REQUIRE(back.entries().size() == 2);
    CHECK(back.entries()[0].check == "first");
    CHECK(back.entries()[0].residual == 1.25e-11);
    CHECK(back.entries()[0].tolerance == 1e-10);
    CHECK(back.entries()[0].pass);
    CHECK(back.entries()[0].context["n"] == 3);
    CHECK_FALSE(back.entries()[1].pass);
    CHECK(back.warnings() == r.warnings());
    CHECK(back.to_json().dump() == j.dump());
}

TEST_CASE("non-finite residuals survive the JSON round trip as failures") {
    VerificationReport r;
    r.add("nan", std::nan(""), 1.0);
    auto back = VerificationReport::from_json(Json::parse(r.to_json().dump()));
    REQUIRE(back.entries().size() == 1);
    CHECK(std::isnan(back.entries()[0].residual));
    CHECK_FALSE(back.entries()[0].pass);
}
