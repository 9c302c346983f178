#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "spikelab/errors.hpp"
#include "spikelab/persistence.hpp"

using namespace spikelab;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir()
        : path_(fs::temp_directory_path() /
                ("spikelab_persist_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name())))
    {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

}  // namespace

TEST(Persistence, SpecJsonRoundTrip)
{
    EnsembleSpec s;
    s.n = 37;
    s.p = 91;
    s.spikes = {5.25, 1.0 / 3.0};
    s.field = Field::Real;
    s.entry_law = {LawKind::ThreePointMatch, 0.1};
    s.seed = 18446744073709551557ULL;
    EXPECT_EQ(spec_from_json(spec_to_json(s)), s);
    EXPECT_THROW(spec_from_json("{\"n\": "), FormatError);
    EXPECT_THROW(spec_from_json("[1, 2]"), FormatError);
}

TEST(Persistence, CurveKeepsTenDigits)
{
    TempDir dir;
    DistributionCurve c;
    for (int i = 0; i <= 20; ++i) {
        c.grid.push_back(-4.0 + 0.3 * i + 1e-13);
        c.cdf.push_back(0.5 * (1.0 + std::tanh(c.grid.back())));
    }
    save_curve(c, dir.file("c.csv"));
    const DistributionCurve back = load_curve(dir.file("c.csv"));
    ASSERT_EQ(back.grid.size(), c.grid.size());
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
        EXPECT_NEAR(back.grid[i], c.grid[i], 5e-10 * std::max(1.0, std::abs(c.grid[i])));
        EXPECT_NEAR(back.cdf[i], c.cdf[i], 5e-10 * std::max(1e-300, c.cdf[i]));
    }
    EXPECT_EQ(read_text(dir.file("c.csv")).substr(0, 6), "x,cdf\n");
}

TEST(Persistence, CountTableRoundTrip)
{
    TempDir dir;
    const dyck::PathCountTable table(12);
    std::vector<CountRow> rows = table.rows();
    rows.emplace_back(200, 1, 1, dyck::catalan(200));
    save_count_table(rows, dir.file("t.csv"));
    EXPECT_EQ(load_count_table(dir.file("t.csv")), rows);
}

TEST(Persistence, SeriesRoundTripKeepsNaNRatio)
{
    TempDir dir;
    const auto rows = series_rows(genfun::coeffs_a(genfun::Rational(3), genfun::Rational(2, 3), 1.25, 30));
    ASSERT_EQ(rows.size(), 31u);
    EXPECT_TRUE(std::isnan(rows[0].ratio));
    EXPECT_NEAR(rows[5].ratio, rows[5].a_prime / rows[4].a_prime, 1e-15 * rows[5].ratio);
    save_series(rows, dir.file("s.csv"));
    EXPECT_EQ(load_series(dir.file("s.csv")), rows);
}

TEST(Persistence, MomentReportJsonRoundTrip)
{
    moments::MomentReport r;
    r.method = moments::Method::SymbolicGaussian;
    r.power = 3;
    r.value = genfun::Rational(123456789, 1024);
    r.path_terms[{0, 1}] = genfun::Rational(1, 3);
    r.path_terms[{2, 2}] = genfun::Rational(-7, 9);
    const moments::MomentReport back = moment_report_from_json(moment_report_to_json(r));
    EXPECT_EQ(back.method, r.method);
    EXPECT_EQ(back.power, 3);
    EXPECT_EQ(back.value, r.value);
    EXPECT_EQ(back.path_terms, r.path_terms);

    moments::MomentReport mc;
    mc.method = moments::Method::MonteCarlo;
    mc.mc_mean = 0.1;
    mc.mc_stderr = 1.0 / 3.0;
    mc.mc_trials = 5000;
    const moments::MomentReport mc_back = moment_report_from_json(moment_report_to_json(mc));
    EXPECT_EQ(mc_back.mc_mean, 0.1);
    EXPECT_EQ(mc_back.mc_stderr, 1.0 / 3.0);
    EXPECT_EQ(mc_back.mc_trials, 5000);
    EXPECT_THROW(moment_report_from_json("{}x"), FormatError);
}

TEST(Persistence, MalformedFilesRaiseFormatError)
{
    TempDir dir;
    EXPECT_THROW(load_curve(dir.file("missing.csv")), FormatError);
    write_text(dir.file("bad_header.csv"), "y,cdf\n0,0.5\n");
    EXPECT_THROW(load_curve(dir.file("bad_header.csv")), FormatError);
    write_text(dir.file("bad_number.csv"), "x,cdf\n0,abc\n");
    EXPECT_THROW(load_curve(dir.file("bad_number.csv")), FormatError);
    write_text(dir.file("short.csv"), "n,k,m,count\n1,1\n");
    EXPECT_THROW(load_count_table(dir.file("short.csv")), FormatError);
    write_text(dir.file("bad_count.csv"), "n,k,m,count\n1,1,1,x9\n");
    EXPECT_THROW(load_count_table(dir.file("bad_count.csv")), FormatError);
    write_text(dir.file("bad_q.csv"), "n,numerator,denominator,a_prime,ratio\n0,1,0,1,nan\n");
    EXPECT_THROW(load_series(dir.file("bad_q.csv")), FormatError);
    EXPECT_THROW(load_experiment(dir.file("none.csv")), FormatError);
}
