#include <gtest/gtest.h>

#include "normcert/certify.hpp"
#include "normcert/json_io.hpp"
#include "oracles.hpp"

namespace normcert {
namespace {

Certificate expect_certificate(const CertifyResult& r) {
  if (const auto* refusal = std::get_if<Refusal>(&r)) {
    ADD_FAILURE() << "refused: " << refusal->reason << " " << refusal->details.dump();
  }
  return std::get<Certificate>(r);
}

bool all_positive(const SymRationalMatrix& a) {
  for (const auto& c : a.cells())
    if (c <= 0) return false;
  return true;
}

TEST(Screen, Examples) {
  EXPECT_FALSE(screen_necessary(cycle(4), NormMode::norming));
  EXPECT_FALSE(screen_necessary(path(4), NormMode::weakly_norming));

  const auto odd = screen_necessary(cycle(5), NormMode::weakly_norming);
  ASSERT_TRUE(odd);
  EXPECT_EQ(odd->structural_reason, reason::non_bipartite);

  const auto path_norm = screen_necessary(path(3), NormMode::norming);
  ASSERT_TRUE(path_norm);
  EXPECT_EQ(path_norm->structural_reason, reason::non_eulerian);

  EXPECT_FALSE(screen_necessary(disjoint_union(cycle(4), cycle(6)), NormMode::norming));
  const Graph theta(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 2}});
  EXPECT_TRUE(structural_report(theta).bipartite);
  const auto t = screen_necessary(theta, NormMode::norming);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->structural_reason, reason::non_eulerian);
}

TEST(BowtieCycle, CertifiesFiveToSeven) {
  for (int k = 5; k <= 7; ++k) {
    const auto c = expect_certificate(certify_bowtie_cycle(k));
    EXPECT_EQ(c.kind, CertificateKind::not_weakly_norming);
    EXPECT_EQ(c.profile_evidence["q_xx"], "0");
    EXPECT_GE(parse_rational(c.profile_evidence["l_xy"].get<std::string>()), 1);
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(c.witness->size(), 3);
    EXPECT_TRUE(all_positive(*c.witness));
    EXPECT_LT(*c.value, 0);
    EXPECT_TRUE(verify_certificate(c).valid) << k;
  }
}

TEST(BowtieCycle, SmallCyclesRefuse) {
  for (int k = 3; k <= 4; ++k) {
    const auto r = certify_bowtie_cycle(k);
    ASSERT_TRUE(std::holds_alternative<Refusal>(r)) << k;
    const auto& ev = std::get<Refusal>(r).details;
    EXPECT_EQ(ev["l_xy"], "0");
  }
  EXPECT_THROW(certify_bowtie_cycle(2), usage_error);
  EXPECT_THROW(certify_bowtie_cycle(9), inconclusive_error);
}

TEST(Kpm, FiveCertifies) {
  const auto c = expect_certificate(certify_kpm(5));
  EXPECT_EQ(c.kind, CertificateKind::not_norming);
  const auto& ev = c.degree_evidence;
  EXPECT_EQ(ev["thresholds"]["xx"], 8);
  EXPECT_EQ(ev["thresholds"]["xy"], 5);
  EXPECT_EQ(ev["thresholds"]["yy"], 2);
  EXPECT_GE(ev["observed_min_degree"]["xx"].get<int>(), 8);
  EXPECT_GE(ev["observed_min_degree"]["xy"].get<int>(), 5);
  EXPECT_NE(ev["xy_threshold_coefficient"], "0");
  EXPECT_TRUE(ev["yy_vanishes_through_threshold"].get<bool>());
  EXPECT_TRUE(verify_certificate(c).valid);
}

TEST(Kpm, SmallAndEvenCases) {
  const auto three = certify_kpm(3);
  ASSERT_TRUE(std::holds_alternative<Refusal>(three));
  const auto four = certify_kpm(4);
  const auto screen = expect_certificate(four);
  EXPECT_EQ(screen.kind, CertificateKind::screening_failure);
  EXPECT_EQ(screen.structural_reason, reason::non_eulerian);
  EXPECT_TRUE(verify_certificate(screen).valid);
  EXPECT_THROW(certify_kpm(1), usage_error);
  EXPECT_THROW(certify_kpm(8), inconclusive_error);
}

TEST(Positivize, Examples) {
  const auto mobius = positivize_witness(bowtie_blowup(cycle(5)), bowtie_template(), {{2, 2}, {0, 2}}, 40);
  ASSERT_TRUE(mobius.ok);
  EXPECT_GE(mobius.steps, 1);
  EXPECT_LE(mobius.steps, 20);
  EXPECT_TRUE(all_positive(mobius.matrix));

  using Cell = SymbolicTemplate::Cell;
  const auto tmpl = SymbolicTemplate::from_rows({{Rational(1), Cell("x")}, {Cell("x"), Rational(1)}});
  EXPECT_FALSE(positivize_witness(cycle(4), tmpl, all_pairs(2), 20).ok);

  const auto positive = SymbolicTemplate::from_rows({{Rational(1), ratio(1, 2)}, {ratio(1, 2), Rational(1)}});
  const auto p4 = positivize_witness(path(4), positive, all_pairs(2), 5);
  if (p4.ok) EXPECT_EQ(p4.steps, 0);
}

TEST(Search, FindsWitnessForShortPath) {
  const auto r = random_witness_search(path(4), 3, 10000, NormMode::weakly_norming, 7);
  ASSERT_TRUE(r.certificate);
  EXPECT_LE(r.trials_run, 10000);
  EXPECT_TRUE(all_positive(*r.certificate->witness));
  EXPECT_TRUE(verify_certificate(*r.certificate).valid);
}

TEST(Search, NoWitnessForNormingCycle) {
  for (auto mode : {NormMode::weakly_norming, NormMode::norming}) {
    const auto r = random_witness_search(cycle(4), 2, 500, mode, 11);
    EXPECT_FALSE(r.certificate);
    EXPECT_EQ(r.trials_run, 500);
  }
}

TEST(Search, Reproducible) {
  const auto a = random_witness_search(path(4), 3, 10000, NormMode::weakly_norming, 99);
  const auto b = random_witness_search(path(4), 3, 10000, NormMode::weakly_norming, 99);
  ASSERT_TRUE(a.certificate && b.certificate);
  EXPECT_EQ(a.trials_run, b.trials_run);
  EXPECT_EQ(certificate_to_json(*a.certificate).dump(), certificate_to_json(*b.certificate).dump());
}

TEST(Search, Guards) {
  EXPECT_THROW(random_witness_search(cycle(4), 4, 1, NormMode::norming, 1), inconclusive_error);
  EXPECT_THROW(random_witness_search(cycle(4), 2, -1, NormMode::norming, 1), usage_error);
}

TEST(Convexity, ViolationAlongMobiusDirection) {
  const auto pos = positivize_witness(bowtie_blowup(cycle(5)), bowtie_template(), {{2, 2}, {0, 2}}, 40);
  ASSERT_TRUE(pos.ok);
  const auto d = direction_matrix(3, {{2, 2}, {0, 2}}, pos.direction);
  const auto found = find_convexity_violation(bowtie_blowup(cycle(5)), pos.matrix, d, 1, NormMode::weakly_norming);
  ASSERT_TRUE(found);
  EXPECT_GT(2 * found->first.at_center, found->first.at_plus + found->first.at_minus);
}

TEST(Convexity, NoneForNormingCycleOrZeroDirection) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = sample_matrix(2, MatrixClass::signed_, 4, rng).map([](const Rational& r) { return Rational(r / 2); });
    const auto d = sample_matrix(2, MatrixClass::signed_, 4, rng);
    EXPECT_FALSE(convexity_violation(cycle(4), a, d, ratio(1, 2), NormMode::norming));
    EXPECT_FALSE(convexity_violation(cycle(4), a, SymRationalMatrix(2), ratio(1, 2), NormMode::norming));
  }
  EXPECT_THROW(convexity_violation(cycle(4), all_ones(2), all_ones(2), 1, NormMode::norming), usage_error);
}

TEST(Verify, RoundTripAndTamper) {
  const auto c = expect_certificate(certify_bowtie_cycle(5));
  const auto back = certificate_from_json(json::parse(certificate_to_json(c).dump()));
  EXPECT_TRUE(verify_certificate(back).valid);
  EXPECT_EQ(certificate_to_json(back).dump(), certificate_to_json(c).dump());

  auto tampered = back;
  tampered.value = *tampered.value + 1;
  const auto report = verify_certificate(tampered);
  EXPECT_FALSE(report.valid);
  EXPECT_EQ(report.recomputed_value, c.value);

  auto negative = back;
  negative.witness->set(0, 0, -1);
  EXPECT_FALSE(verify_certificate(negative).valid);

  auto broken = back;
  broken.direction.pop_back();
  EXPECT_THROW(verify_certificate(broken), usage_error);
}

TEST(Verify, ScreeningCertificates) {
  const auto c5 = screen_necessary(cycle(5), NormMode::weakly_norming);
  ASSERT_TRUE(c5);
  EXPECT_TRUE(verify_certificate(*c5).valid);
  const auto back = certificate_from_json(certificate_to_json(*c5));
  EXPECT_TRUE(verify_certificate(back).valid);
  auto wrong = *c5;
  wrong.graph = cycle(6);
  EXPECT_FALSE(verify_certificate(wrong).valid);
}

}  // namespace
}  // namespace normcert
