#include <gtest/gtest.h>

#include <sstream>

#include "rvfl/run_config.hpp"

using namespace rvfl;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

}  // namespace

TEST(HyperSetting, Forms) {
  const HyperSetting fixed{"0.5"};
  EXPECT_TRUE(fixed.is_fixed());
  EXPECT_EQ(fixed.value(), 0.5);
  EXPECT_FALSE(fixed.range().is_interval());
  EXPECT_EQ(fixed.range().grid(), std::vector<double>{0.5});

  const HyperSetting interval{"1e-3:1e3"};
  EXPECT_FALSE(interval.is_fixed());
  EXPECT_THROW(interval.value(), std::invalid_argument);
  EXPECT_TRUE(interval.range().is_interval());

  const HyperSetting list{"1,10,100"};
  EXPECT_EQ(list.range().grid(), (std::vector<double>{1, 10, 100}));

  EXPECT_THROW(HyperSetting{"1:2:3"}.range(), std::invalid_argument);
  EXPECT_THROW(HyperSetting{"abc"}.value(), std::invalid_argument);
  EXPECT_THROW(HyperSetting{"0:1"}.range(), std::invalid_argument);
}

TEST(RunConfig, Defaults) {
  const RunConfig cfg;
  EXPECT_EQ(cfg.learner, LearnerKind::RvflPlus);
  EXPECT_EQ(cfg.folds, 10);
  EXPECT_EQ(cfg.nodes, 1000);
  EXPECT_FALSE(cfg.needs_search());
  const LearnerConfig l = cfg.learner_config();
  EXPECT_EQ(l.c, 1.0);
  EXPECT_EQ(l.gamma, default_config(LearnerKind::RvflPlus).gamma);
  EXPECT_EQ(l.activation, Activation::Sigmoid);
}

TEST(RunConfig, ParsesFile) {
  const RunConfig cfg = parse(
      "# comment line\n"
      "learner = krvfl-plus\n"
      "\n"
      "C = 10   # trailing comment\n"
      "tau=0.5\n"
      "kernel = polynomial\n"
      "degree = 3\n"
      "normal_features = half\n"
      "binary_rule = ova\n"
      "folds = 4\n");
  EXPECT_EQ(cfg.learner, LearnerKind::KrvflPlus);
  EXPECT_EQ(cfg.folds, 4);
  ASSERT_TRUE(cfg.normal_features.has_value());
  EXPECT_EQ(*cfg.normal_features, 0);
  const LearnerConfig l = cfg.learner_config();
  EXPECT_EQ(l.c, 10.0);
  EXPECT_EQ(l.gamma, 5000.0);
  EXPECT_EQ(l.binary_rule, BinaryRule::OneVsAll);
  ASSERT_TRUE(std::holds_alternative<PolynomialKernel>(l.kernel.mercer));
  EXPECT_EQ(std::get<PolynomialKernel>(l.kernel.mercer).degree, 3);
}

TEST(RunConfig, ErrorsNameTheLine) {
  try {
    parse("C = 1\nbogus = 3\n");
    FAIL() << "expected a throw";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse("no equals sign\n"), std::invalid_argument);
  EXPECT_THROW(parse("folds = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("learner = svm\n"), std::invalid_argument);
  EXPECT_THROW(parse("header = maybe\n"), std::invalid_argument);
  EXPECT_THROW(parse("P = -1\n"), std::invalid_argument);
}

TEST(RunConfig, EchoRoundTrip) {
  RunConfig cfg = parse("learner = krvfl-plus\nC = 0.001:1000\nactivation = all\nnormal_features = 3\nseed = 9\n");
  std::ostringstream out;
  write_run_config(out, cfg);
  EXPECT_NE(out.str().find("gamma = 5000\n"), std::string::npos) << out.str();
  const RunConfig back = parse(out.str());
  std::ostringstream again;
  write_run_config(again, back);
  EXPECT_EQ(again.str(), out.str());
  EXPECT_EQ(back.to_key_values(), cfg.to_key_values());
}

TEST(RunConfig, SearchDetection) {
  EXPECT_TRUE(parse("C = 1:10\n").needs_search());
  EXPECT_TRUE(parse("gamma = 1,2\n").needs_search());
  EXPECT_TRUE(parse("activation = sigmoid,sine\n").needs_search());
  EXPECT_TRUE(parse("activation = all\n").needs_search());
  EXPECT_FALSE(parse("gamma = 7\n").needs_search());
  const SearchSpace space = parse("C = 1:10\nactivation = all\nbudget = 3\n").search_space();
  EXPECT_TRUE(space.c.is_interval());
  EXPECT_EQ(space.activations.size(), 5u);
  EXPECT_EQ(space.budget, 3);
}

TEST(RunConfig, NormalFeatureSplit) {
  EXPECT_FALSE(parse("normal_features = all\n").normal_features.has_value());
  EXPECT_EQ(*parse("normal_features = 5\n").normal_features, 5);
  EXPECT_THROW(parse("normal_features = 0\n"), std::invalid_argument);
  EXPECT_EQ(default_normal_count(7), 4);
  EXPECT_EQ(default_normal_count(8), 4);
}

TEST(RunConfig, LearnerList) {
  const RunConfig cfg = parse("learners = rvfl-pinv, krvfl-plus\n");
  EXPECT_EQ(cfg.learner_list(), (std::vector<LearnerKind>{LearnerKind::RvflPinv, LearnerKind::KrvflPlus}));
  EXPECT_THROW(parse("learners = ,\n"), std::invalid_argument);
}
