// Copyright 2026 The meanking Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "meanking/protocol.hpp"
#include "meanking/verification.hpp"
#include "oracle.hpp"

namespace {

using namespace meanking;
using Exact = ExactBackend;
using Float = FloatBackend;

BracketLabel label_of(std::vector<int> k) { return BracketLabel{std::move(k)}; }

TEST(Psi0, ComputationalFormAndIndependenceOfBasisPair) {
  for (int p : {2, 3, 5, 7}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    const auto s0 = pb.psi0(0);
    for (int j = 1; j <= p; ++j) {
      for (int jb = 1; jb <= p; ++jb) {
        EXPECT_TRUE(s0.at(j, jb) == (j == jb ? Exact::inv_sqrt_p(p) : Exact::zero(p)));
      }
    }
    for (int m = 1; m <= p; ++m) EXPECT_TRUE(states_equal(pb.psi0(m), s0)) << p << " " << m;
    EXPECT_LT((oracle::to_vec(s0.amps) - oracle::psi0(p)).norm(), 1e-12);
  }
}

TEST(Psi0, OverlapWithEveryPostMeasurementState) {
  for (int p : {2, 3, 5, 7}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    const auto s0 = pb.psi0(0);
    for (int m = 0; m <= p; ++m) {
      for (int k = 1; k <= p; ++k) EXPECT_TRUE(inner(s0, pb.post_measurement_state(m, k)) == Exact::inv_sqrt_p(p));
    }
  }
}

TEST(PostMeasurement, AmplitudeOverlapsAreOneOverP) {
  for (int p : {2, 3, 5}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    for (int m = 0; m <= p; ++m) {
      for (int k = 1; k <= p; ++k) {
        const auto a = pb.post_measurement_state(m, k);
        EXPECT_EQ(inner(a, a).as_rational(), Rational(1));
        for (int m2 = 0; m2 <= p; ++m2) {
          if (m2 == m) continue;
          for (int k2 = 1; k2 <= p; ++k2) {
            EXPECT_EQ(inner(a, pb.post_measurement_state(m2, k2)).as_rational(), Rational(1, p));
          }
        }
      }
    }
  }
}

TEST(PsiBasis, GramMatrixIsIdentity) {
  for (int p : {2, 3, 5, 7}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    ASSERT_EQ(pb.psi_basis().size(), static_cast<std::size_t>(p * p));
    const auto r = detail::psi_orthonormality(pb);
    EXPECT_TRUE(r.passed()) << p;
    EXPECT_EQ(r.checked, static_cast<std::size_t>(p * p * (p * p + 1) / 2));
  }
}

TEST(BracketStates, MatchIndependentClosedForm) {
  oracle::Gen g(31);
  for (int p : {2, 3, 5, 7}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    const auto pf = make_protocol_basis<Float>(PrimeDim(p));
    for (int trial = 0; trial < 25; ++trial) {
      const auto k = g.label(p);
      const auto ref = oracle::bracket(p, k);
      EXPECT_LT((oracle::to_vec(pb.bracket_state(label_of(k)).amps) - ref).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((oracle::to_vec(pf.bracket_state(label_of(k)).amps) - ref).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(BracketStates, OrthogonalToIncompatibleOutcomes) {
  oracle::Gen g(37);
  for (int p : {2, 3, 5}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    for (int trial = 0; trial < 10; ++trial) {
      const auto l = label_of(g.label(p));
      const auto r = detail::bracket_defining_property(pb, l, pb.bracket_state(l));
      EXPECT_TRUE(r.passed());
      EXPECT_EQ(r.checked, static_cast<std::size_t>((p + 1) * (p - 1)));
    }
  }
}

TEST(BracketStates, OverlapExamples) {
  const int p = 3;
  const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
  const auto a = label_of({1, 1, 1, 1});
  const auto none = label_of({2, 2, 2, 2});
  const auto one = label_of({1, 2, 3, 2});
  EXPECT_EQ(bracket_overlap_closed_form(a, none), Rational(-1, 3));
  EXPECT_EQ(bracket_overlap_closed_form(a, one), Rational(0));
  EXPECT_EQ(bracket_overlap_closed_form(a, a), Rational(1));
  const auto sa = pb.bracket_state(a);
  EXPECT_EQ(inner(sa, pb.bracket_state(none)).as_rational(), Rational(-1, 3));
  EXPECT_TRUE(inner(sa, pb.bracket_state(one)).is_zero());
  EXPECT_EQ(inner(sa, sa).as_rational(), Rational(1));
}

TEST(BracketStates, ClosedFormHoldsOnRandomPairs) {
  for (int p : {5, 7}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    VerifyOptions opt;
    opt.random_bracket_pairs = 300;
    opt.seed = 5;
    const auto r = bracket_closed_form(pb, opt);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.checked, 300u);
  }
}

TEST(BracketStates, RandomPairsCoverEveryAgreementCount) {
  std::mt19937_64 rng(9);
  std::set<int> seen;
  for (int i = 0; i < 2000; ++i) {
    auto [a, b] = random_label_pair(5, rng);
    seen.insert(agreements(a, b));
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(BracketStates, RejectMalformedLabels) {
  const auto pb = make_protocol_basis<Exact>(PrimeDim(3));
  EXPECT_THROW(pb.bracket_state(label_of({1, 1, 1})), std::invalid_argument);
  EXPECT_THROW(pb.bracket_state(label_of({1, 1, 1, 4})), std::out_of_range);
}

TEST(MeasurementLabels, DistinctMembersAgreeInExactlyOneSlot) {
  for (int p : oracle::kPrimes) {
    std::vector<BracketLabel> fam;
    for (int k0 = 1; k0 <= p; ++k0) {
      for (int k1 = 1; k1 <= p; ++k1) {
        fam.push_back(measurement_label(p, k0, k1));
        EXPECT_EQ(measurement_index(fam.back()), (k0 - 1) * p + (k1 - 1));
      }
    }
    for (std::size_t a = 0; a < fam.size(); ++a) {
      for (std::size_t b = a + 1; b < fam.size(); ++b) EXPECT_EQ(agreements(fam[a], fam[b]), 1) << p;
    }
  }
}

TEST(MeasurementLabels, ZeroResidueMapsToP) {
  EXPECT_EQ(measurement_label(2, 1, 1), label_of({1, 1, 2}));
  const auto pb = make_protocol_basis<Float>(PrimeDim(2));
  std::vector<oracle::Vec> states;
  for (const auto& [l, s] : pb.measurement_basis()) states.push_back(oracle::bracket(2, l.k));
  ASSERT_EQ(states.size(), 4u);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) EXPECT_NEAR(std::abs(states[a].dot(states[b])), a == b ? 1.0 : 0.0, 1e-12);
  }
}

TEST(MeasurementBasis, OrthonormalAndComplete) {
  for (int p : {2, 3, 5, 7}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    const auto mb = pb.measurement_basis();
    ASSERT_EQ(mb.size(), static_cast<std::size_t>(p * p));
    EXPECT_TRUE(detail::measurement_basis_orthonormality(mb).passed()) << p;
    EXPECT_TRUE(detail::resolution_of_identity(p, mb).passed()) << p;
  }
}

TEST(Retrodiction, EveryReachableOutcomeAnnouncesTheKingsResult) {
  for (int p : {2, 3, 5}) {
    const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
    const auto r = detail::retrodiction_soundness(pb, pb.measurement_basis());
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.checked, static_cast<std::size_t>((p + 1) * p * p * p));
  }
}

TEST(Retrodiction, ConditionalDistributionIsUniformOverCompatibleLabels) {
  for (int p : {2, 3, 5}) {
    for (int m = 0; m <= p; ++m) {
      for (int k = 1; k <= p; ++k) {
        const auto v = oracle::ket(p, m, k);
        const auto post = oracle::kron(v, v.conjugate());
        double total = 0;
        for (int k0 = 1; k0 <= p; ++k0) {
          for (int k1 = 1; k1 <= p; ++k1) {
            const auto l = measurement_label(p, k0, k1);
            const double w = std::norm(oracle::bracket(p, l.k).dot(post));
            EXPECT_NEAR(w, l[m] == k ? 1.0 / p : 0.0, 1e-12) << p << " " << m << " " << k << " " << l.str();
            total += w;
          }
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
      }
    }
  }
}

TEST(Verification, AllFamiliesPassForSmallPrimes) {
  for (int p : {2, 3, 5}) {
    for (const auto& r : run_verification<Exact>(PrimeDim(p))) EXPECT_TRUE(r.passed()) << p << " " << r.name;
  }
  for (int p : {2, 3, 5, 7, 11}) {
    for (const auto& r : run_verification<Float>(PrimeDim(p))) EXPECT_TRUE(r.passed()) << p << " " << r.name;
  }
}

}  // namespace
