#include "commands.h"
#include "io.h"

#include "arena/errors.h"

#include <doctest.h>
#include <json.hpp>

#include <sstream>
#include <string>

using namespace arena;
using namespace arena::cli;

namespace {

template <class F>
std::string capture(F&& f) {
    std::ostringstream out;
    f(out);
    return out.str();
}

std::string error_message(auto&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("shape parsing") {
    CHECK(parse_shape("5,1") == ArenaShape(5, 1));
    CHECK(parse_shape(" 12 , 3 ") == ArenaShape(12, 3));
    for (const char* bad : {"", "5", "5,", ",1", "a,b", "0,1", "5,1,2", "-1,2", "5;1"}) {
        CHECK_THROWS_AS(parse_shape(bad), ValidationError);
    }
}

TEST_CASE("history files") {
    std::istringstream plain("# comment\n12,0\n\n10,3\n6,3\n12,2  # late run\n");
    const auto counts = read_history(plain, ArenaShape(12, 3), false);
    CHECK(counts.size() == 4);
    CHECK(counts.at({12, 2}) == 1);

    std::istringstream fifa("3\n5\n0\n5\n");
    const auto codes = read_history(fifa, ArenaShape(5, 1), true);
    CHECK(codes.at({5, 0}) == 2);
    CHECK(codes.at({3, 1}) == 1);
    CHECK(codes.at({0, 1}) == 1);

    std::istringstream not_boundary("12,0\n3,2\n");
    const std::string msg = error_message([&] { read_history(not_boundary, ArenaShape(12, 3), false, "h.txt"); });
    CHECK(msg.find("h.txt:2") != std::string::npos);

    std::istringstream bad_code("1\n6\n");
    CHECK(error_message([&] { read_history(bad_code, ArenaShape(5, 1), true, "f"); }).find("f:2") !=
          std::string::npos);
    std::istringstream garbage("5,x\n");
    CHECK_THROWS_AS(read_history(garbage, ArenaShape(5, 1), false), ValidationError);
    std::istringstream fifa_other("1\n");
    CHECK_THROWS_AS(read_history(fifa_other, ArenaShape(3, 3), true), ValidationError);
}

TEST_CASE("matrix files") {
    std::istringstream in("# players\n101\n010\n\n110\n001\n");
    const auto m = read_matrix(in);
    CHECK(m.players() == 4);
    CHECK(m.rounds() == 3);
    std::ostringstream out;
    write_matrix(out, m);
    std::istringstream again(out.str());
    CHECK(read_matrix(again) == m);

    std::istringstream ragged("101\n01\n");
    CHECK(error_message([&] { read_matrix(ragged, "m.txt"); }).find("m.txt:2") != std::string::npos);
    std::istringstream bad("102\n");
    CHECK_THROWS_AS(read_matrix(bad), ValidationError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_matrix(empty), ValidationError);
}

TEST_CASE("predict command") {
    PredictConfig cfg;
    cfg.fifa = true;
    cfg.baseline = true;
    std::istringstream brazil("3\n3\n2\n5\n5\n3\n2\n5\n5\n2\n");
    const std::string table = capture([&](std::ostream& o) { cmd_predict(cfg, brazil, o); });
    CHECK(table.find("5-0") != std::string::npos);
    CHECK(table.find("0.3137") != std::string::npos);
    CHECK(table.find("0.4000") != std::string::npos);

    cfg.format = Format::machine;
    std::istringstream again("3\n3\n2\n5\n5\n3\n2\n5\n5\n2\n");
    const auto doc = nlohmann::json::parse(capture([&](std::ostream& o) { cmd_predict(cfg, again, o); }));
    CHECK(doc["schema"] == kSchema);
    CHECK(doc["engine"] == "exact");
    double total = 0.0;
    for (const auto& row : doc["distribution"]) total += row["probability"].get<double>();
    CHECK(total == doctest::Approx(1.0));

    PredictConfig big;
    big.shape = "12,3";
    big.engine = Engine::exact;
    std::istringstream hs("12,0\n10,3\n6,3\n12,2\n");
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_predict(big, hs, sink), EngineLimitError);
}

TEST_CASE("simulate and estimate commands") {
    SimulateConfig sim;
    sim.players = 256;
    sim.rounds = 8;
    sim.rho = 1.0;
    sim.seed = 5;
    const std::string a = capture([&](std::ostream& o) { cmd_simulate(sim, o); });
    const std::string b = capture([&](std::ostream& o) { cmd_simulate(sim, o); });
    CHECK(a == b);
    sim.seed = 6;
    CHECK(a != capture([&](std::ostream& o) { cmd_simulate(sim, o); }));

    std::istringstream in(a);
    const auto m = read_matrix(in);
    CHECK(m.players() == 256);
    EstimateConfig est;
    est.format = Format::machine;
    std::istringstream in2(a);
    const auto doc = nlohmann::json::parse(capture([&](std::ostream& o) { cmd_estimate(est, in2, o); }));
    CHECK(doc["M"] == 256);
    CHECK(doc["is_winloss"] == true);
    CHECK(doc["T"].get<double>() == doctest::Approx(statistic_T(m)));

    SimulateConfig game;
    game.shape = "5,1";
    game.log2_extra = 2;
    game.format = Format::machine;
    const auto g = nlohmann::json::parse(capture([&](std::ostream& o) { cmd_simulate(game, o); }));
    CHECK(g["chi_square"]["statistic"].get<double>() == 0.0);

    SimulateConfig odd;
    odd.players = 5;
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_simulate(odd, sink), ValidationError);
}

TEST_CASE("table5 command is reproducible across thread counts") {
    Table5Config cfg;
    cfg.rhos = {0.5, 4.0};
    cfg.players = {64};
    cfg.rounds = {8};
    cfg.reps = 20;
    cfg.format = Format::machine;
    cfg.threads = 1;
    const std::string one = capture([&](std::ostream& o) { cmd_table5(cfg, o); });
    cfg.threads = 4;
    CHECK(one == capture([&](std::ostream& o) { cmd_table5(cfg, o); }));
    const auto doc = nlohmann::json::parse(one);
    CHECK(doc["cells"].size() == 2);

    cfg.players = {64, 128};
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_table5(cfg, sink), ValidationError);
}

TEST_CASE("bridge command") {
    BridgeConfig cfg;
    cfg.format = Format::machine;
    cfg.mode = BridgeMode::record;
    cfg.wins = 3;
    cfg.rounds = 4;
    cfg.rho = 1.0;
    const auto rec = nlohmann::json::parse(capture([&](std::ostream& o) { cmd_bridge(cfg, o); }));
    CHECK(rec["delta"].get<double>() == doctest::Approx(1.52216).epsilon(1e-5));

    cfg.mode = BridgeMode::to_rating;
    cfg.x_i = 0.0;
    cfg.x_j = 0.0;
    cfg.rho = 0.2;
    const auto low = nlohmann::json::parse(capture([&](std::ostream& o) { cmd_bridge(cfg, o); }));
    CHECK(low["valid"] == false);

    cfg.mode = BridgeMode::record;
    cfg.wins = 4;
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_bridge(cfg, sink), DomainError);
}
