#include <doctest.h>

#include <sstream>

#include "otcnet/core/csv.hpp"
#include "otcnet/core/error.hpp"
#include "otcnet/core/params.hpp"
#include "otcnet/core/rng.hpp"

using namespace otcnet;

TEST_CASE("named streams are reproducible and distinct") {
    auto a = make_stream(42, "gen.layer", 3);
    auto b = make_stream(42, "gen.layer", 3);
    auto c = make_stream(42, "gen.layer", 4);
    auto d = make_stream(42, "gen.features", 3);
    const auto a0 = a();
    CHECK(a0 == b());
    CHECK(a0 != c());
    CHECK(a0 != d());
    CHECK(derive_seed(1, "x") == derive_seed(1, "x"));
    CHECK(derive_seed(1, "x") != derive_seed(2, "x"));
    CHECK(derive_seed(1, "x", 0) != derive_seed(1, "x", 1));
}

TEST_CASE("doubles survive a text round trip") {
    for (double x : {0.1, 1.0 / 3.0, 148.4131591025766, -2.5e-300, 1e308}) {
        const auto s = csv::format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(csv::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv table parsing") {
    const auto t = csv::Table::parse("# comment\na,b\n1,2.5\n\n3, 4\n", "t.csv");
    REQUIRE(t.rows() == 2);
    CHECK(t.get_int(1, t.column("a")) == 3);
    CHECK(t.get_double(0, t.column("b")) == 2.5);
    CHECK(t.line_of(1) == 5);
    CHECK_THROWS_AS(t.column("zz"), SchemaError);
    try {
        t.column("zz");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("zz") != std::string::npos);
    }
}

TEST_CASE("csv parse errors carry line and field") {
    const auto t = csv::Table::parse("a,b\n1,x\n", "bad.csv");
    try {
        t.get_double(0, t.column("b"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.field() == "b");
    }
    CHECK_THROWS_AS(csv::Table::parse("a,b\n1\n", "short.csv"), ParseError);
    CHECK_THROWS_AS(csv::Table::parse("", "empty.csv"), SchemaError);
}

TEST_CASE("csv writer") {
    std::ostringstream os;
    csv::Writer w(os);
    w.field("x").field(1.5).field(3).end_row();
    w.row({"a", "b"});
    CHECK(os.str() == "x,1.5,3\na,b\n");
}

TEST_CASE("model params flatten and names") {
    ModelParams p{{1.0}, {2.0}, {3.0}};
    CHECK(p.flatten() == std::vector<double>{1, 2, 3});
    CHECK(p.names() == std::vector<std::string>{"beta_x", "beta_y", "eta"});
    ModelParams q{{1.0, 2.0}, {3.0}, {4.0, 5.0}};
    CHECK(q.names() == std::vector<std::string>{"beta_x_1", "beta_x_2", "beta_y", "eta_1", "eta_2"});
    CHECK(ModelParams::unflatten(q.flatten(), 2, 1, 2) == q);
}

TEST_CASE("error kinds") {
    CHECK(ConfigError("x").kind() == ErrorKind::Config);
    CHECK(ParseError("f", 1, "c", "m").kind() == ErrorKind::Data);
    CHECK(SchemaError("x").kind() == ErrorKind::Data);
    CHECK(NumericError("x").kind() == ErrorKind::Numeric);
    CHECK(std::string(ParseError("f.csv", 7, "buyer", "self-loop").what()) == "f.csv:7: field 'buyer': self-loop");
}
