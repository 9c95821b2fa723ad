#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include <spikecount/io.hpp>
#include <spikecount/pipeline.hpp>
#include <spikecount/simulate.hpp>

using namespace spikecount;

namespace {

Eigen::MatrixXd parse(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_csv(in, "mem.csv");
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const DataError& e) {
        return e.what();
    }
    return {};
}

class TempFile {
public:
    explicit TempFile(const std::string& stem)
        : path_((std::filesystem::temp_directory_path() / (stem + std::to_string(::getpid()) + ".csv")).string()) {}
    ~TempFile() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

void write_csv(const std::string& path, const Eigen::MatrixXd& x) {
    std::ofstream out(path);
    write_matrix_csv(out, x);
}

}  // namespace

TEST(MatrixCsv, PlainNumbers) {
    const auto x = parse("1,2,3\n4,5,6\n");
    ASSERT_EQ(x.rows(), 2);
    ASSERT_EQ(x.cols(), 3);
    EXPECT_EQ(x(1, 2), 6.0);
}

TEST(MatrixCsv, HeaderBlankLinesAndSpaces) {
    const auto x = parse("a, b\r\n\n 1.5 , -2e-3\r\n+3,4\n\n");
    ASSERT_EQ(x.rows(), 2);
    EXPECT_EQ(x(0, 0), 1.5);
    EXPECT_EQ(x(0, 1), -2e-3);
    EXPECT_EQ(x(1, 0), 3.0);
}

TEST(MatrixCsv, Diagnostics) {
    EXPECT_NE(error_of("1,2\n3,x\n").find("line 2, column 2"), std::string::npos);
    EXPECT_NE(error_of("1,2\n3,x\n").find("'x'"), std::string::npos);
    EXPECT_NE(error_of("h1,h2\n1,2\n3\n").find("line 3: expected 2 columns, found 1"), std::string::npos);
    EXPECT_NE(error_of("1,2\n3,\n").find("column 2"), std::string::npos);
    EXPECT_NE(error_of("1,nan\n").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("1,inf\n").find("non-finite"), std::string::npos);
    EXPECT_NE(error_of("only,a,header\n").find("no numeric rows"), std::string::npos);
    EXPECT_NE(error_of("").find("no numeric rows"), std::string::npos);
}

TEST(MatrixCsv, RoundTripIsExact) {
    Engine rng(4);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd x(7, 5);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng) * 1e3;
    std::stringstream s;
    write_matrix_csv(s, x);
    EXPECT_EQ(parse_matrix_csv(s), x);
}

TEST(MatrixCsv, MissingFile) { EXPECT_THROW(read_matrix_csv("/nonexistent/x.csv"), DataError); }

TEST(ReportCsv, HeaderAndRows) {
    auto cfg = ExperimentConfig::from_preset("K");
    cfg.grid = {{40, 40, {}}};
    cfg.estimators = {Estimator::PY, Estimator::KN};
    cfg.reps = 10;
    const std::string text = report_csv(run_experiment(cfg), false);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kReportHeader);
    std::getline(in, line);
    EXPECT_EQ(line.rfind("K,PY,40,40,1,8,,known,10,", 0), 0u) << line;
    EXPECT_NE(line.find(",1,0,"), std::string::npos);  // mean sigma2 then the zero timing column
    std::getline(in, line);
    EXPECT_EQ(line.rfind("K,KN,40,40,1,,0.005,known,10,", 0), 0u) << line;
    EXPECT_FALSE(std::getline(in, line));
}

TEST(EstimateFile, WhiteNoiseDefaults) {
    const TempFile file("spikecount_white_");
    write_csv(file.path(), generate_observations(SpikeSpec({}, 1.0, 300), 300, {31}));
    const auto est = estimate_file(file.path(), {});
    EXPECT_EQ(est.p, 300u);
    EXPECT_EQ(est.n, 300u);
    ASSERT_TRUE(est.py && est.kn);
    EXPECT_EQ(est.py->q_hat, 0u);
    EXPECT_EQ(est.kn->q_hat, 0u);
    EXPECT_GT(est.C, 4.0);
    const Json j = file_estimate_to_json(est);
    EXPECT_EQ(j["PY"]["q_hat"], 0);
    EXPECT_TRUE(j["KN"].contains("thresholds"));
    EXPECT_NEAR(j["KN"]["sigma2"].get<double>(), 1.0, 0.05);
}

TEST(EstimateFile, ModelBData) {
    const TempFile file("spikecount_model_b_");
    FileEstimateSettings settings;
    settings.auto_C = false;
    settings.py.C = find_preset("B").C;
    int py_hits = 0;
    int kn_hits = 0;
    const int datasets = 8;
    for (int k = 0; k < datasets; ++k) {
        write_csv(file.path(),
                  generate_observations(SpikeSpec::from_strengths({10.0, 5.0}, 1.0, 3000), 300, {200u + k}));
        const auto est = estimate_file(file.path(), settings);
        py_hits += est.py->q_hat == 2;
        kn_hits += est.kn->q_hat == 2;
    }
    EXPECT_GE(py_hits, 5);
    EXPECT_GE(kn_hits, 5);
}

TEST(EstimateFile, SingleRowIsRejected) {
    const TempFile file("spikecount_one_row_");
    std::ofstream(file.path()) << "1,2,3,4\n";
    try {
        estimate_file(file.path(), {});
        FAIL() << "expected a DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("n >= 2"), std::string::npos) << e.what();
    }
}

TEST(EstimateFile, Centering) {
    Eigen::MatrixXd x = generate_observations(SpikeSpec({}, 1.0, 50), 200, {8});
    x.rowwise() += Eigen::RowVectorXd::Constant(50, 30.0);
    FileEstimateSettings s;
    s.auto_C = false;
    s.py.C = 5.0;
    EXPECT_GT(estimate_matrix(x, s).kn->q_hat, 0u);  // the mean acts as a huge spike
    s.center = true;
    EXPECT_EQ(estimate_matrix(x, s).kn->q_hat, 0u);
}
