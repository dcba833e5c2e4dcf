#include <gtest/gtest.h>

#include "lauricella/report.hpp"

using namespace lauricella;

namespace {

AnalysisReport run(const char* w, bool exact = false) { return analyze(WeightSystem::parse(w), exact); }

}  // namespace

TEST(Analyze, NonArithmeticCocompact) {
  auto r = run("3/12,3/12,3/12,7/12");
  EXPECT_EQ(r.label, CaseLabel::Hyperbolic);
  ASSERT_TRUE(std::holds_alternative<ConditionReport>(r.with_infinity));
  EXPECT_TRUE(std::get<ConditionReport>(r.with_infinity).int_ok);
  EXPECT_TRUE(r.finite.int_ok);
  EXPECT_FALSE(std::get<ArithmeticityReport>(r.arithmetic).arithmetic);
  EXPECT_TRUE(std::get<std::vector<std::vector<std::size_t>>>(r.cusps).empty());
  EXPECT_EQ(std::get<long>(r.genus), 12);
  EXPECT_EQ(r.gram.signature, (Signature{2, 1, 0}));
  for (const auto& g : r.generators) EXPECT_TRUE(g.preserves_form);
}

TEST(Analyze, ParabolicMarksUndefinedParts) {
  auto r = run("1/6,1/6,1/6,1/6,1/6,1/6");
  EXPECT_EQ(r.label, CaseLabel::Parabolic);
  EXPECT_TRUE(std::holds_alternative<NotApplicable>(r.with_infinity));
  EXPECT_TRUE(std::holds_alternative<NotApplicable>(r.epsilon));
  auto j = to_json(r);
  EXPECT_EQ(j["cusps"].get<std::string>().rfind("n/a: ", 0), 0u);
  EXPECT_EQ(j["case"], "Parabolic");
}

TEST(Analyze, OutOfRangeIsValidationError) {
  try {
    run("1/2,1/2,1/2,1/2,1/2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(exit_code(e.kind()), 2);
  }
}

TEST(Analyze, UnipotentGeneratorHasInfiniteOrder) {
  auto r = run("1/2,1/2,1/3");
  ASSERT_EQ(r.generators.size(), 2u);
  EXPECT_TRUE(r.generators[0].unipotent);
  EXPECT_FALSE(r.generators[0].order);
  EXPECT_EQ(r.generators[1].order, 6);
  EXPECT_EQ(to_json(r)["generators"][0]["order"], "infinite");
}

TEST(Json, RationalsAreStrings) {
  auto j = to_json(run("1/5,1/7,1/4,1/3"));
  for (const auto& w : j["weights"]) EXPECT_TRUE(w.is_string());
  EXPECT_TRUE(j["total"].is_string());
  for (const auto& p : j["conditions"]["finite"]["pairs"]) EXPECT_TRUE(p["pair_sum"].is_string());
}

TEST(Json, RoundTripAcrossCases) {
  for (const char* w : {"3/12,3/12,3/12,7/12", "1/6,1/6,1/6,1/6,1/6,1/6", "1/3,1/3,1/6", "1/2,1/2,1/3",
                        "1/5,1/7,1/4,1/3,5/12", "2/5,4/5"}) {
    for (bool exact : {false, true}) {
      auto j = to_json(run(w, exact));
      auto back = to_json(report_from_json(nlohmann::json::parse(j.dump())));
      EXPECT_EQ(back.dump(), j.dump()) << w << " exact=" << exact;
    }
  }
}

TEST(Json, ExactEntriesReproduceGram) {
  auto ws = WeightSystem::parse("1/5,1/7,1/4,1/3");
  auto r = report_from_json(nlohmann::json::parse(to_json(analyze(ws, true)).dump()));
  ASSERT_TRUE(r.gram.exact);
  auto form = form_on_period_coordinates(ws);
  for (std::size_t i = 0; i < form.dimension(); ++i)
    for (std::size_t k = 0; k < form.dimension(); ++k) EXPECT_EQ((*r.gram.exact)[i][k], form.entry(i, k));
}

TEST(Json, RejectsForeignDocuments) {
  EXPECT_THROW(report_from_json(nlohmann::json::parse(R"({"schema":"other"})")), Error);
  auto j = nlohmann::json::parse(to_json(run("1/3,1/3,1/6")).dump());
  j.erase("gram");
  try {
    report_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}

TEST(ExitCodes, Contract) {
  EXPECT_EQ(exit_code(ErrorKind::Parse), 2);
  EXPECT_EQ(exit_code(ErrorKind::Validation), 2);
  EXPECT_EQ(exit_code(ErrorKind::DivisionByZero), 2);
  EXPECT_EQ(exit_code(ErrorKind::Numerical), 3);
  EXPECT_EQ(exit_code(ErrorKind::ResourceCap), 4);
  EXPECT_EQ(exit_code(ErrorKind::ConductorOverflow), 4);
}

TEST(PeriodsJson, Shape) {
  auto j = periods_json(WeightSystem::parse("3/12,3/12,3/12,7/12"), Configuration::real({0, 1, 2, 3}), 64);
  EXPECT_EQ(j["F"].size(), 3u);
  EXPECT_TRUE(j["F_inf"].is_array());
  EXPECT_LT(j["residuals"]["closure"].get<double>(), 1e-8);
  EXPECT_TRUE(j["residuals"]["parabolic_pi"].is_string());
  EXPECT_GT(j["ball_radius"].get<double>(), 0.0);
  EXPECT_LT(j["ball_radius"].get<double>(), 1.0);
}
