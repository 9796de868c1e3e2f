#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "coherence/twoslit.hpp"

using namespace coherence;
using namespace coherence::twoslit;

namespace {

constexpr double ln2 = 0.6931471805599453;

TwoSlitConfig small_config() {
  TwoSlitConfig cfg;
  cfg.grid = 32;
  cfg.slit_separation = 8;
  cfg.slit_width = 2;
  cfg.time = 20.0;
  return cfg;
}

}  // namespace

TEST_CASE("build validates the geometry") {
  TwoSlitConfig cfg;
  cfg.grid = 8;
  CHECK_THROWS_AS(TwoSlitModel::build(cfg), std::invalid_argument);

  cfg = TwoSlitConfig{};
  cfg.slit_width = cfg.slit_separation + 2;  // slits would overlap
  CHECK_THROWS_AS(TwoSlitModel::build(cfg), std::invalid_argument);

  cfg = TwoSlitConfig{};
  cfg.slit_separation = 2 * cfg.grid;  // slits outside the grid
  CHECK_THROWS_AS(TwoSlitModel::build(cfg), std::invalid_argument);
}

TEST_CASE("the coherent model is incompatible, the polarized one is not") {
  const auto model = TwoSlitModel::build(TwoSlitConfig{});
  CHECK_FALSE(is_compatible(model.slit_observable(), model.spatial_state()));

  // equal-weight disjoint peaks make a pure two-block state: one bit
  CHECK(coherence_information(model.slit_observable(), model.spatial_state()) ==
        doctest::Approx(ln2).epsilon(1e-10));

  TwoSlitConfig tagged;
  tagged.polarizers = true;
  const auto pol = TwoSlitModel::build(tagged);
  CHECK(is_compatible(pol.slit_observable(), pol.spatial_state()));
  CHECK(coherence_information(pol.slit_observable(), pol.spatial_state()) <= 1e-10);
}

TEST_CASE("evolution is unitary") {
  const auto model = TwoSlitModel::build(TwoSlitConfig{});
  const Matrixd& u = model.spatial_evolution();
  CHECK((u.adjoint() * u - Matrixd::Identity(u.rows(), u.cols())).norm() <= 1e-9);
}

TEST_CASE("patterns stay normalized at every time") {
  for (double t : {0.0, 13.0, 40.0, 91.0}) {
    TwoSlitConfig cfg = small_config();
    cfg.time = t;
    const auto model = TwoSlitModel::build(cfg);
    for (auto source : {PatternSource::coherent, PatternSource::luders}) {
      const auto pattern = screen_pattern(model, source);
      CHECK(pattern.minCoeff() >= 0.0);
      CHECK(std::abs(pattern.sum() - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("at t = 0 the coherent pattern is the initial packet") {
  TwoSlitConfig cfg = small_config();
  cfg.time = 0.0;
  const auto model = TwoSlitModel::build(cfg);
  const auto pattern = screen_pattern(model, PatternSource::coherent);
  const RealVectord expected = model.spatial_state().matrix().diagonal().real();
  CHECK((pattern - expected).norm() <= 1e-12);
}

TEST_CASE("pinched pattern is the probability mixture of single-slit patterns") {
  const auto model = TwoSlitModel::build(small_config());
  const auto& a = model.slit_observable();
  const auto rho = model.spatial_state();
  const auto p = probabilities(a, rho);

  const Matrixd& u = model.spatial_evolution();
  auto pattern_of = [&](const DensityMatrixd& x) {
    return (u * x.matrix() * u.adjoint()).diagonal().real().eval();
  };

  RealVectord mixture = RealVectord::Zero(model.grid());
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    mixture += p(l) * pattern_of(conditional_state(a, rho, l));
  }
  const auto pinched = screen_pattern(model, PatternSource::luders);
  CHECK((pinched - mixture).norm() <= 1e-10);
}

TEST_CASE("default configuration shows fringes that the polarizers erase") {
  const auto model = TwoSlitModel::build(TwoSlitConfig{});
  const auto coherent = screen_pattern(model, PatternSource::coherent);
  const auto pinched = screen_pattern(model, PatternSource::luders);
  const auto contrast = fringe_contrast(model, coherent, pinched);
  CHECK(contrast.l1_gap > 0.1);
  CHECK(contrast.modulation > 0.01);

  TwoSlitConfig tagged;
  tagged.polarizers = true;
  const auto pol = TwoSlitModel::build(tagged);
  const auto pol_coherent = screen_pattern(pol, PatternSource::coherent);
  const auto pol_pinched = screen_pattern(pol, PatternSource::luders);
  CHECK((pol_coherent - pol_pinched).cwiseAbs().maxCoeff() <= 1e-8);

  const auto pol_contrast = fringe_contrast(pol, pol_coherent, pol_pinched);
  CHECK(contrast.modulation > 10.0 * pol_contrast.modulation);

  const auto same = fringe_contrast(model, pinched, pinched);
  CHECK(same.l1_gap == 0.0);
  CHECK(same.modulation == 0.0);
}

TEST_CASE("the seed only sets an unobservable phase") {
  TwoSlitConfig cfg = small_config();
  cfg.seed = 1;
  const auto m1 = TwoSlitModel::build(cfg);
  cfg.seed = 99;
  const auto m2 = TwoSlitModel::build(cfg);
  CHECK((screen_pattern(m1, PatternSource::coherent) -
         screen_pattern(m2, PatternSource::coherent))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("pattern differences realize a mean gap of an evolved observable") {
  // B = U^dagger D U for a diagonal screen functional D: the mean gap between
  // rho and its pinching equals the same functional of the pattern difference.
  const auto model = TwoSlitModel::build(small_config());
  const auto coherent = screen_pattern(model, PatternSource::coherent);
  const auto pinched_pattern = screen_pattern(model, PatternSource::luders);

  Prng rng(7);
  RealVectord f(model.grid());
  for (Eigen::Index x = 0; x < f.size(); ++x) f(x) = rng.uniform(-1.0, 1.0);

  const Matrixd& u = model.spatial_evolution();
  Matrixd d = Matrixd::Zero(model.grid(), model.grid());
  for (Eigen::Index x = 0; x < f.size(); ++x) d(x, x) = f(x);
  const Matrixd b = u.adjoint() * d * u;

  const auto rho = model.spatial_state();
  const auto pinched = luders_state(model.slit_observable(), rho);
  const double mean_gap = ((rho.matrix() - pinched.matrix()) * b).real().trace();
  const double pattern_gap = f.dot(coherent - pinched_pattern);
  CHECK(mean_gap == doctest::Approx(pattern_gap).epsilon(1e-9));
}

TEST_CASE("partial trace over the tag factor") {
  // two-qubit product check: tr_2(|01><01|) = |0><0|
  Matrixd m = Matrixd::Zero(4, 4);
  m(1, 1) = 1.0;  // |0,tag1>
  Matrixd left = partial_trace_right(m, 2);
  Matrixd expected = Matrixd::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((left - expected).norm() < 1e-14);
  CHECK_THROWS_AS(partial_trace_right(Matrixd::Zero(3, 3), 2), ValidationError);
}

TEST_CASE("repo default config file matches the compiled defaults") {
  std::ifstream in(std::string(COHERENCE_REPO_DIR) + "/configs/twoslit_default.json");
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  const TwoSlitConfig cfg;
  CHECK(j.at("grid").get<int>() == cfg.grid);
  CHECK(j.at("slit_separation").get<int>() == cfg.slit_separation);
  CHECK(j.at("slit_width").get<int>() == cfg.slit_width);
  CHECK(j.at("mass").get<double>() == cfg.mass);
  CHECK(j.at("time").get<double>() == cfg.time);
  CHECK(j.at("polarizers").get<bool>() == cfg.polarizers);
}
