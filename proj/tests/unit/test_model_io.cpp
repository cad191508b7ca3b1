#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rvfl/model_io.hpp"
#include "rvfl/synthetic.hpp"
#include "test_util.hpp"

using namespace rvfl;

namespace {

Dataset data(std::uint64_t seed) {
  const synthetic::LupiTask task(synthetic::LupiConfig{}, seed);
  return task.sample(40, seed + 1);
}

std::string saved(const TrainedModel& m, const LearnerConfig* cfg = nullptr) {
  std::ostringstream out;
  save_model(out, m, cfg);
  return out.str();
}

TrainedModel reload(const std::string& text) {
  std::istringstream in(text);
  return load_model(in);
}

std::vector<LearnerConfig> all_configs() {
  std::vector<LearnerConfig> out;
  for (const auto k : {LearnerKind::RvflPinv, LearnerKind::RvflRidge, LearnerKind::RvflPlus, LearnerKind::KrvflPlus}) {
    LearnerConfig cfg = default_config(k);
    cfg.nodes = 7;
    cfg.c = 0.3;
    cfg.activation = Activation::Tribas;
    out.push_back(cfg);
  }
  LearnerConfig direct = default_config(LearnerKind::RvflPlus);
  direct.nodes = 0;
  direct.priv_nodes = 0;
  out.push_back(direct);
  LearnerConfig poly = default_config(LearnerKind::KrvflPlus);
  poly.kernel.mercer = PolynomialKernel{3, 0.5};
  poly.priv_kernel = KernelSpec{NoMercerKernel{}, true};
  out.push_back(poly);
  return out;
}

}  // namespace

TEST(ModelIo, RoundTripIsBitExact) {
  const Dataset d = data(1);
  const Dataset probe = data(2);
  for (const auto& cfg : all_configs()) {
    TrainedModel m = fit(cfg, d).model;
    m.input_l1 = Vector::LinSpaced(d.normal_features(), 0.1, 3.7);
    const std::string text = saved(m, &cfg);
    const TrainedModel back = reload(text);
    EXPECT_EQ(back.kind(), m.kind());
    EXPECT_EQ(back.task, m.task);
    EXPECT_EQ(back.binary_rule, m.binary_rule);
    EXPECT_EQ(back.class_labels, m.class_labels);
    ASSERT_TRUE(back.input_l1.has_value());
    EXPECT_EQ(*back.input_l1, *m.input_l1);
    EXPECT_EQ(back.predict_raw(probe.x), m.predict_raw(probe.x)) << cfg.describe();
    EXPECT_EQ(saved(back, &cfg), text);
  }
}

TEST(ModelIo, PlusModelFieldsSurvive) {
  LearnerConfig cfg = default_config(LearnerKind::RvflPlus);
  cfg.nodes = 5;
  cfg.priv_nodes = 3;
  const TrainedModel m = fit(cfg, data(3)).model;
  const TrainedModel back = reload(saved(m));
  const auto& a = std::get<RvflPlusModel>(m.model);
  const auto& b = std::get<RvflPlusModel>(back.model);
  EXPECT_EQ(a.c, b.c);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_TRUE(a.layer == b.layer);
  EXPECT_TRUE(a.priv_layer == b.priv_layer);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.correction_weights, b.correction_weights);
  EXPECT_FALSE(back.input_l1.has_value());
}

TEST(ModelIo, RepeatedSavesAreIdentical) {
  const auto cfg = all_configs()[2];
  const TrainedModel m = fit(cfg, data(4)).model;
  EXPECT_EQ(saved(m, &cfg), saved(m, &cfg));
  const TrainedModel again = fit(cfg, data(4)).model;
  EXPECT_EQ(saved(m, &cfg), saved(again, &cfg));
}

TEST(ModelIo, ConfigEchoIsIgnoredOnLoad) {
  const auto cfg = all_configs()[3];
  const TrainedModel m = fit(cfg, data(5)).model;
  const std::string with = saved(m, &cfg);
  EXPECT_NE(with.find("# gamma = 5000"), std::string::npos);
  EXPECT_EQ(saved(reload(with)), saved(m));
}

TEST(ModelIo, CorruptInputThrows) {
  const TrainedModel m = fit(all_configs()[1], data(6)).model;
  const std::string text = saved(m);
  EXPECT_THROW(reload(""), DataError);
  EXPECT_THROW(reload("not a model\n"), DataError);
  EXPECT_THROW(reload(text.substr(0, text.size() / 2)), DataError);
  std::string bad_number = text;
  const auto pos = bad_number.find("0x");
  ASSERT_NE(pos, std::string::npos);
  bad_number.replace(pos, 2, "zz");
  EXPECT_THROW(reload(bad_number), DataError);
  EXPECT_THROW(reload(text.substr(0, text.rfind("end"))), DataError);
}

TEST(ModelIo, FileSaveLeavesNoTemporary) {
  const auto dir = std::filesystem::temp_directory_path() / "rvfl_model_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const TrainedModel m = fit(all_configs()[0], data(7)).model;
  save_model_file(dir / "m.txt", m);
  const TrainedModel back = load_model_file(dir / "m.txt");
  EXPECT_EQ(saved(back), saved(m));
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1);
  EXPECT_THROW(save_model_file(dir / "missing" / "m.txt", m), std::exception);
  EXPECT_FALSE(std::filesystem::exists(dir / "missing"));
  EXPECT_THROW(load_model_file(dir / "absent.txt"), DataError);
  std::filesystem::remove_all(dir);
}
