#include <doctest.h>

#include <cmath>
#include <numbers>

#include "riskbounds/distributions.hpp"
#include "riskbounds/types.hpp"

using namespace riskbounds;

// Reference values below were computed with mpmath (30 digits) and scipy.stats.

TEST_CASE("normal quantile matches high-precision references") {
  struct Case {
    double p;
    double z;
  };
  const Case cases[] = {
      {0.975, 1.9599639845400542355},   {0.9, 1.281551565544600467},     {0.3, -0.52440051270804078404},
      {0.02, -2.0537489106318230529},   {1e-10, -6.3613409024040562047}, {0.999999, 4.7534243088228989482},
  };
  for (const auto& c : cases) {
    CAPTURE(c.p);
    CHECK(std::fabs(standard_normal_quantile(c.p) - c.z) < 1e-9);
  }
  CHECK(standard_normal_quantile(0.5) == 0.0);
  for (double p : {1e-12, 0.001, 0.1, 0.37}) CHECK(standard_normal_quantile(1.0 - p) == doctest::Approx(-standard_normal_quantile(p)).epsilon(1e-6));
}

TEST_CASE("normal quantile inverts the CDF") {
  // Upper-tail p near 1 cannot be represented finely enough to test there.
  for (double x = -8.0; x <= 3.0; x += 0.37) {
    const double p = normal_cdf(x);
    if (p <= 0.0 || p >= 1.0) continue;
    CAPTURE(x);
    CHECK(standard_normal_quantile(p) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("normal quantile rejects p outside (0, 1)") {
  CHECK_THROWS_AS(standard_normal_quantile(0.0), InputError);
  CHECK_THROWS_AS(standard_normal_quantile(1.0), InputError);
  CHECK_THROWS_AS(standard_normal_quantile(-0.1), InputError);
  CHECK_THROWS_AS(standard_normal_quantile(std::nan("")), InputError);
}

TEST_CASE("student t quantile closed forms") {
  // df = 1 is Cauchy: tan(pi (p - 1/2)).
  CHECK(std::fabs(student_t_quantile(0.975, 1) - 12.706204736174705) < 1e-8);
  CHECK(std::fabs(student_t_quantile(0.975, 1) - std::tan(std::numbers::pi * 0.475)) < 1e-12);
  for (std::int64_t df : {1, 2, 3, 7, 40, 1000}) CHECK(student_t_quantile(0.5, df) == 0.0);
  // df = 2: t = (2p - 1) / sqrt(2 p (1 - p)).
  CHECK(std::fabs(student_t_quantile(0.9, 2) - 0.8 / std::sqrt(0.18)) < 1e-12);
}

TEST_CASE("student t quantile matches reference table") {
  struct Case {
    std::int64_t df;
    double p;
    double t;
  };
  const Case cases[] = {
      {3, 0.975, 3.182446305284263},   {3, 0.9, 1.6377443536962095},    {3, 0.995, 5.840909309733352},
      {3, 0.6, 0.27667066233268983},   {3, 0.001, -10.214531852405337}, {5, 0.975, 2.570581835636314},
      {5, 0.001, -5.89342953135601},   {10, 0.975, 2.2281388519649385}, {10, 0.995, 3.16927267261695},
      {30, 0.975, 2.0422724563012373}, {30, 0.6, 0.2556053649519127},   {253, 0.975, 1.9693848042198945},
      {253, 0.001, -3.122756151714228}, {1000, 0.975, 1.9623390808264074},
      {1000000, 0.975, 1.9599663568141066}, {1000000, 0.001, -3.09024045631652},
  };
  for (const auto& c : cases) {
    CAPTURE(c.df);
    CAPTURE(c.p);
    CHECK(std::fabs(student_t_quantile(c.p, c.df) - c.t) < 1e-8);
  }
}

TEST_CASE("student t converges to the normal") {
  CHECK(std::fabs(student_t_quantile(0.975, 1000000) - 1.959964) < 1e-3);
  CHECK(std::fabs(student_t_quantile(0.975, 1000000) - standard_normal_quantile(0.975)) < 1e-5);
}

TEST_CASE("student t quantile and CDF are inverse") {
  for (std::int64_t df : {3, 4, 9, 25, 120}) {
    for (double p : {0.0005, 0.01, 0.2, 0.45, 0.55, 0.8, 0.99, 0.9995}) {
      CAPTURE(df);
      CAPTURE(p);
      CHECK(student_t_cdf(student_t_quantile(p, df), static_cast<double>(df)) == doctest::Approx(p).epsilon(1e-10));
    }
  }
}

TEST_CASE("student t quantile rejects invalid arguments") {
  CHECK_THROWS_AS(student_t_quantile(0.0, 5), InputError);
  CHECK_THROWS_AS(student_t_quantile(1.0, 5), InputError);
  CHECK_THROWS_AS(student_t_quantile(0.5, 0), InputError);
}

TEST_CASE("chi-square upper tail") {
  CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(chi_square_sf(16.9189776046, 9) == doctest::Approx(0.05000000000032789).epsilon(1e-10));
  CHECK(chi_square_sf(50, 9) == doctest::Approx(1.0772382022574693e-07).epsilon(1e-10));
  CHECK(chi_square_sf(0.5, 3) == doctest::Approx(0.9188914116546758).epsilon(1e-12));
  CHECK(chi_square_sf(100, 40) == doctest::Approx(4.791357300338064e-07).epsilon(1e-10));
  // One degree of freedom reduces to erfc(sqrt(x / 2)).
  CHECK(chi_square_sf(2.0, 1) == doctest::Approx(std::erfc(1.0)).epsilon(1e-13));
  CHECK(chi_square_sf(0.0, 4) == 1.0);
}

TEST_CASE("incomplete beta") {
  CHECK(incomplete_beta(2.5, 4.0, 0.3) == doctest::Approx(0.3521975859067672).epsilon(1e-12));
  CHECK(incomplete_beta(0.5, 0.5, 0.9) == doctest::Approx(0.7951672353008665).epsilon(1e-12));
  // I_x(1, 1) = x
  CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-14));
}

TEST_CASE("binomial pmf sums to one and handles degenerate p") {
  double total = 0.0;
  for (int k = 0; k <= 200; ++k) total += binomial_pmf(200, k, 0.13);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(binomial_pmf(2, 0, 0.4) == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(binomial_pmf(5, 0, 0.0) == 1.0);
  CHECK(binomial_pmf(5, 5, 1.0) == 1.0);
  CHECK(binomial_pmf(5, 3, 0.0) == 0.0);
  // Log space keeps large n finite.
  CHECK(std::isfinite(log_binomial_pmf(100000000, 50000000, 0.5)));
}
