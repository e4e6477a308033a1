#include "hawkes/error.hpp"
#include "hawkes/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

using namespace hawkes;

namespace {

ErrorCode parse_error_of(const std::string& text) {
    try {
        (void)io::parse_sequences(text);
    } catch (const HawkesError& e) {
        return e.code();
    }
    return ErrorCode::invalid_argument;
}

} // namespace

TEST(SequenceIo, ArrayObjectAndLines) {
    const auto a = io::parse_sequences(R"([{"T": 3, "events": [1, 2]}, {"T": 5, "events": []}])");
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0], EventSequence({1.0, 2.0}, 3.0));
    EXPECT_TRUE(a[1].empty());
    const auto b = io::parse_sequences(R"({"T": 3, "events": [1, 2]})");
    ASSERT_EQ(b.size(), 1u);
    const auto c = io::parse_sequences("{\"T\": 3, \"events\": [1]}\n\n{\"T\": 4, \"events\": [2, 3]}\n");
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[1], EventSequence({2.0, 3.0}, 4.0));
}

TEST(SequenceIo, RoundTripIsExact) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<EventSequence> seqs;
    for (int k = 0; k < 5; ++k) {
        std::vector<double> t;
        double x = 0.0;
        for (int i = 0; i < 50; ++i) t.push_back(x += u(rng) + 1e-9);
        seqs.emplace_back(t, x + 0.1 * u(rng));
    }
    EXPECT_EQ(io::parse_sequences(io::dump_sequences(seqs)), seqs);
    EXPECT_EQ(io::dump_sequences({}), "[]\n");
}

TEST(SequenceIo, Errors) {
    EXPECT_EQ(parse_error_of(""), ErrorCode::parse_error);
    EXPECT_EQ(parse_error_of("[{\"events\": [1]}]"), ErrorCode::parse_error);
    EXPECT_EQ(parse_error_of("[{\"T\": 3, \"events\": [2, 1]}]"), ErrorCode::parse_error);
    EXPECT_EQ(parse_error_of("[{\"T\": 3, \"events\": [1, 4]}]"), ErrorCode::parse_error);
    EXPECT_EQ(parse_error_of("[{\"T\": 3, \"events\": [\"x\"]}]"), ErrorCode::parse_error);
    EXPECT_EQ(parse_error_of("[{\"T\": 3, \"events\": [1]"), ErrorCode::parse_error);
    try {
        (void)io::parse_sequences("[{\"T\": 3}]");
    } catch (const HawkesError& e) {
        EXPECT_NE(std::string(e.what()).find("events"), std::string::npos);
    }
}

TEST(ModelIo, RoundTrip) {
    const std::vector<HawkesModel> models{{0.5, ExpKernel{1.0, 1.1}},
                                          {0.5, PowerLawKernel{0.9, 1.0, 2.0}},
                                          {0.5, RayleighKernel{1.2, 1.0}},
                                          {0.5, GaussianKernel{0.5, 0.5, 1.0}},
                                          {0.1 + 1e-17, QExpKernel{0.8, 1.1}}};
    for (const auto& m : models) {
        const HawkesModel back = io::model_from_json(nlohmann::json::parse(io::model_to_json(m).dump()));
        EXPECT_EQ(back.mu, m.mu);
        EXPECT_EQ(parameters(back.kernel), parameters(m.kernel));
    }
    const auto j = io::model_to_json({0.5, GaussianKernel{0.5, 0.5, 1.0}});
    EXPECT_EQ(j["family"], "GSS");
    EXPECT_EQ(j["params"]["sigma"], 1.0);
}

TEST(ModelIo, Errors) {
    using nlohmann::json;
    auto code = [](const json& j) {
        try {
            (void)io::model_from_json(j);
        } catch (const HawkesError& e) {
            return e.code();
        }
        return ErrorCode::invalid_argument;
    };
    EXPECT_EQ(code(json::parse(R"({"mu": 0.5, "family": "WEIBULL", "params": {}})")), ErrorCode::parse_error);
    EXPECT_EQ(code(json::parse(R"({"mu": 0.5, "family": "EXP", "params": {"alpha": 1}})")), ErrorCode::parse_error);
    EXPECT_EQ(code(json::parse(R"({"mu": 0.5, "family": "EXP", "params": {"alpha": 1, "beta": -1}})")), ErrorCode::parse_error);
    EXPECT_EQ(code(json::parse(R"({"mu": 0.5, "family": "EXP", "params": {"alpha": 1, "beta": 1, "gamma": 2}})")),
              ErrorCode::parse_error);
    EXPECT_EQ(code(json::parse(R"({"family": "EXP", "params": {"alpha": 1, "beta": 1}})")), ErrorCode::parse_error);
}

TEST(FileIo, AtomicWriteAndRead) {
    const auto dir = std::filesystem::temp_directory_path() / "hawkes_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    io::write_text_atomic(path, "hello");
    EXPECT_EQ(io::read_text(path), "hello");
    io::write_text_atomic(path, "again");
    EXPECT_EQ(io::read_text(path), "again");
    EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
    EXPECT_THROW((void)io::read_text(dir / "missing.json"), HawkesError);
    std::filesystem::remove_all(dir);
}
