#include <doctest.h>

#include "smg/harness.hpp"

using namespace smg;

TEST_CASE("reference tables") {
    const auto t1 = table_columns(1);
    REQUIRE(t1.size() == 3);
    CHECK(t1[1].reference == std::array<int, 4>{23, 22, 20, 19});
    CHECK(t1[0].cfg.omega_post == doctest::Approx(0.4));
    CHECK(t1[0].cfg.post == 1);
    CHECK(t1[0].cfg.pre == 0);

    const auto t2 = table_columns(2);
    REQUIRE(t2.size() == 4);
    CHECK(t2[3].reference == std::array<int, 4>{15, 15, 14, 13});

    const auto t3 = table_columns(3);
    CHECK(t3[1].cfg.cycle == CycleKind::w);
    CHECK(t3[1].reference == std::array<int, 4>{15, 15, 14, 13});

    const auto t4 = table_columns(4);
    CHECK(t4[0].cfg.smoother == SmootherKind::vanka);
    CHECK(t4[0].reference == std::array<int, 4>{10, 12, 12, 11});
    CHECK(t4[0].tolerance == 3);
    CHECK_THROWS_AS(table_columns(5), std::invalid_argument);
    for (int t = 1; t <= 4; ++t)
        for (const auto& c : table_columns(t)) CHECK_NOTHROW(validate(c.cfg));
}

TEST_CASE("csv rows") {
    CHECK(csv_header() == "table,t,N,cycle,pre,post,omega_pre,omega_post,smoother,iterations,final_relres,seconds");
    RunRow r;
    r.table = 2;
    r.t = 5;
    r.N = 9801;
    r.cfg.pre = 1;
    r.iterations = 17;
    r.final_relres = 5e-7;
    CHECK(csv_row(r) == "2,5,9801,tgm,1,1,0.6,0.8,jacobi,17,5.000000e-07,0.000");
    CHECK(partial_dim(5) == 33);
}

TEST_CASE("small case runs end to end") {
    CycleConfig c;
    c.pre = 1;
    const RunRow r = run_case(3, c, 0, "probe");
    CHECK(r.converged);
    CHECK(r.N == 9 * 81);
    CHECK(r.final_relres < 1e-6);
}

TEST_CASE("config text") {
    const auto kv = parse_config_text("# comment\n cycle = v \npre=2  # trailing\n\nomega_post = 0.8\n");
    CHECK(kv.size() == 3);
    CHECK(kv.at("cycle") == "v");
    CHECK(kv.at("pre") == "2");
    CHECK(kv.at("omega_post") == "0.8");
    CHECK_THROWS_AS(parse_config_text("cycle v\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text(" = 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(read_config_file("/nonexistent/file.cfg"), std::invalid_argument);
}

TEST_CASE("coordinate text") {
    Sparse m(2, 3);
    m.insert(0, 2) = 1.5;
    m.insert(1, 0) = -2.0;
    m.makeCompressed();
    CHECK(to_coordinate_text(m) == "1 3 1.5\n2 1 -2\n");
}
