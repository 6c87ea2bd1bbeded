#include <fpedss/fpedss.h>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

TEST(CApi, VersionAndClassicalSolve) {
  EXPECT_STREQ(fpedss_version(), "1.0.0");
  fpedss_solution *s = nullptr;
  ASSERT_EQ(fpedss_classical_solve(-1, 2, 1, 0.5, 24, &s), FPEDSS_OK);
  EXPECT_EQ(fpedss_solution_size(s), 24u);
  std::vector<double> b(24);
  EXPECT_EQ(fpedss_solution_amplitudes(s, b.data(), b.size()), 24u);
  EXPECT_NEAR(fpedss_solution_second_moment(s), 0.645281449528, 1e-9);
  EXPECT_LT(fpedss_solution_eigenvalue(s), 1e-6);
  const double x[] = {0.0, 0.7};
  double p[2], e[2];
  ASSERT_EQ(fpedss_solution_pdf(s, x, 2, p), FPEDSS_OK);
  ASSERT_EQ(fpedss_exact_pdf(-1, 2, 1, x, 2, e), FPEDSS_OK);
  EXPECT_NEAR(p[0], e[0], 1e-4);
  EXPECT_NEAR(p[1], e[1], 1e-4);
  double x2 = 0;
  ASSERT_EQ(fpedss_exact_second_moment(-1, 2, 1, &x2), FPEDSS_OK);
  EXPECT_NEAR(x2, 0.64523227161459229, 1e-10);
  fpedss_solution_free(s);
}

TEST(CApi, ErrorCodes) {
  fpedss_solution *s = nullptr;
  EXPECT_EQ(fpedss_classical_solve(-1, -2, 1, 0.5, 8, &s), FPEDSS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(fpedss_last_error()), "");
  EXPECT_EQ(fpedss_classical_solve(-1, 2, 1, 0.5, 8, nullptr), FPEDSS_ERR_INVALID_ARGUMENT);

  fpedss_config *c = nullptr;
  EXPECT_EQ(fpedss_config_parse("a=1\nbogus=2\n", &c), FPEDSS_ERR_CONFIG);
  EXPECT_EQ(fpedss_last_error_line(), 2);
  EXPECT_STREQ(fpedss_last_error_key(), "bogus");
  EXPECT_EQ(fpedss_config_load("/nonexistent/fpedss.cfg", &c), FPEDSS_ERR_CONFIG);
}

TEST(CApi, ConfigAccessors) {
  fpedss_config *c = nullptr;
  ASSERT_EQ(fpedss_config_parse("N=4\nmethod=classical\n", &c), FPEDSS_OK);
  ASSERT_EQ(fpedss_config_set(c, "iters", "300"), FPEDSS_OK);
  char buf[64];
  size_t needed = 0;
  ASSERT_EQ(fpedss_config_get(c, "vqe.iterations", buf, sizeof buf, &needed), FPEDSS_OK);
  EXPECT_STREQ(buf, "300");
  EXPECT_EQ(needed, 4u);
  EXPECT_EQ(fpedss_config_set(c, "b", "-1"), FPEDSS_ERR_CONFIG);
  char tiny[4];
  ASSERT_EQ(fpedss_config_echo(c, tiny, sizeof tiny, &needed), FPEDSS_OK);
  EXPECT_GT(needed, sizeof tiny);
  EXPECT_EQ(std::string(tiny).size(), 3u);
  std::string header(256, '\0');
  ASSERT_EQ(fpedss_config_header(c, header.data(), header.size(), nullptr), FPEDSS_OK);
  EXPECT_EQ(header.rfind("# fpe-dss 1.0.0 config_hash=", 0), 0u);
  fpedss_config *copy = nullptr;
  ASSERT_EQ(fpedss_config_clone(c, &copy), FPEDSS_OK);
  fpedss_config_free(copy);
  fpedss_config_free(c);
}

TEST(CApi, SolveWritesReport) {
  const auto dir = std::filesystem::temp_directory_path() / "fpedss_capi_solve";
  std::filesystem::remove_all(dir);
  fpedss_config *c = nullptr;
  ASSERT_EQ(fpedss_config_parse("N=6\nmethod=classical\n", &c), FPEDSS_OK);
  ASSERT_EQ(fpedss_config_set(c, "output_dir", dir.c_str()), FPEDSS_OK);
  fpedss_report *r = nullptr;
  ASSERT_EQ(fpedss_solve(c, &r), FPEDSS_OK);
  ASSERT_EQ(fpedss_report_moment_count(r), 2u);
  EXPECT_STREQ(fpedss_report_method(r, 1), "classical");
  EXPECT_NEAR(fpedss_report_x2(r, 1), 0.610077421513, 1e-9);
  EXPECT_GT(fpedss_report_x2_rel_error(r, 1), 0.0);
  EXPECT_TRUE(std::filesystem::exists(dir / "pdf.csv"));
  fpedss_report_free(r);
  EXPECT_EQ(fpedss_solve(c, nullptr), FPEDSS_OK);
  fpedss_config_free(c);
}
