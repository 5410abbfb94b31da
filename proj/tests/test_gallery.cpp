#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ratnlevp/error.hpp"
#include "ratnlevp/gallery.hpp"

using namespace ratnlevp;
namespace fs = std::filesystem;

namespace
{

fs::path scratch_dir(const std::string &tag)
{
  const fs::path p = fs::temp_directory_path() / ("ratnlevp_gallery_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ErrorKind kind_of(const std::function<void()> &fn)
{
  try
  {
    fn();
  }
  catch (const Error &e)
  {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

// Literal transcription of
//   B0 = -2*eye(n) + diag(ones(n-1,1),1) + diag(ones(n-1,1),-1);
//   A2 = 0.5*(n*eye(n) - eye(n,1)*ones(1,n) - ones(n,1)*eye(1,n));
void quadratic_oracle(std::size_t n, CMatrix &b0, CMatrix &a2)
{
  b0 = CMatrix(n, n);
  a2 = CMatrix(n, n);
  CMatrix e1_ones(n, n), ones_e1(n, n);
  for (std::size_t j = 0; j < n; ++j)
  {
    e1_ones(0, j) = 1.0;
    ones_e1(j, 0) = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    b0(i, i) = -2.0;
    if (i + 1 < n)
    {
      b0(i, i + 1) = 1.0;
      b0(i + 1, i) = 1.0;
    }
  }
  CMatrix ni = CMatrix::identity(n);
  ni *= static_cast<double>(n);
  a2 = 0.5 * (ni - e1_ones - ones_e1);
}

}  // namespace

TEST_CASE("delay problem matrices")
{
  const auto p = make_delay(1.0);
  CHECK(p.n() == 2);
  CHECK(p.p() == 1);
  CHECK(p.A0 == CMatrix::identity(2));
  CHECK(p.B0 == CMatrix::from_rows({{-5.0, 1.0}, {2.0, -6.0}}));
  CHECK(p.A[0] == CMatrix::from_rows({{2.0, -1.0}, {-4.0, 1.0}}));
  CHECK(std::abs(p.f[0](cplx(0.0, 0.0)) - 1.0) == 0.0);
  CHECK(std::abs(make_delay(2.0).f[0](1.0) - std::exp(-2.0)) < 1e-15);
  CHECK_THROWS_AS(make_delay(0.0), Error);
}

TEST_CASE("fem string matrices")
{
  const auto p = make_fem_string(3);
  const CMatrix b = 3.0 * CMatrix::from_rows({{2.0, -1.0, 0.0}, {-1.0, 2.0, -1.0}, {0.0, -1.0, 1.0}});
  const CMatrix a = (-1.0 / 18.0) * CMatrix::from_rows({{4.0, 1.0, 0.0}, {1.0, 4.0, 1.0}, {0.0, 1.0, 2.0}});
  CHECK(norm_max(p.B0 + b) < 1e-15);
  CHECK(norm_max(p.A0 - a) < 1e-15);
  CHECK(p.A[0](2, 2) == cplx(1.0));
  CHECK(norm_fro(p.A[0]) == 1.0);
  CHECK(std::abs(p.f[0](0.5) - 2.0) < 1e-15);
}

TEST_CASE("exact fem linearization")
{
  const auto lin = make_exact_fem_linearization(2);
  CHECK(lin.A.rows() == 4);
  CHECK(lin.A(0, 0) == cplx(1.0));
  CHECK(lin.A(0, 2) == cplx(-1.0));
  CHECK(lin.A(3, 1) == cplx(1.0));
  CHECK(lin.A(2, 0) == cplx(0.0));
  CHECK(lin.M(2, 2) == cplx(4.0 / 12.0));
  CHECK(lin.M(0, 2) == cplx(0.0));

  // True eigenvalues of the string problem satisfy T(lambda) singular.
  const auto prob = make_fem_string(10);
  const auto big = make_exact_fem_linearization(10);
  const auto ev = dense_geig(big.A, big.M, {.vectors = false});
  int checked = 0;
  for (cplx l : ev.values)
  {
    if (is_infinite(l) || std::abs(l - 1.0) < 1e-6)
    {
      continue;
    }
    const auto sv = jacobi_svd(evaluate_T(prob, l));
    CHECK(sv.sigma.back() <= 1e-9 * sv.sigma.front());
    ++checked;
  }
  CHECK(checked == 11);
}

TEST_CASE("hadeler matrices")
{
  const auto p = make_hadeler(2, 100.0);
  CHECK(p.A[0] == CMatrix::from_rows({{2.0, 2.0}, {2.0, 4.0}}));
  CHECK(norm_max(p.A[1] - CMatrix::from_rows({{2.5, 1.0 / 3.0}, {1.0 / 3.0, 2.25}})) < 1e-15);
  CHECK(norm_max(p.A0) == 0.0);
  CHECK(p.B0 == 100.0 * CMatrix::identity(2));
  CHECK(std::abs(p.f[0](0.0)) == 0.0);
  CHECK(std::abs(p.f[1](cplx(0.0, 2.0)) + 4.0) < 1e-15);
}

TEST_CASE("quadratic halo matches the code transcription")
{
  for (std::size_t n : {2u, 4u, 7u})
  {
    CMatrix b0, a2;
    quadratic_oracle(n, b0, a2);
    const auto p = make_quadratic_halo(n);
    CHECK(p.B0 == b0);
    CHECK(p.A[0] == a2);
    CHECK(p.A0 == CMatrix::identity(n));
  }
  const auto p = make_quadratic_halo(4);
  CHECK(p.B0(0, 0) == cplx(-2.0));
  CHECK(p.B0(0, 1) == cplx(1.0));
  CHECK(p.A[0](0, 0) == cplx(1.0));
}

TEST_CASE("quadratic companion reproduces the polynomial eigenvalues")
{
  const auto p = make_quadratic_halo(4);
  const auto c = quadratic_companion(p.B0, p.A0, p.A[0]);
  const auto ev = dense_geig(c.A, c.M, {.vectors = false});
  CHECK(ev.values.size() == 8);
  int inside = 0;
  const auto &entry = *std::find_if(gallery_entries().begin(), gallery_entries().end(),
                                    [](const GalleryEntry &e) { return e.name == "quadratic"; });
  for (cplx l : ev.values)
  {
    REQUIRE_FALSE(is_infinite(l));
    const auto sv = jacobi_svd(evaluate_T(p, l));
    CHECK(sv.sigma.back() <= 1e-10 * sv.sigma.front());
    inside += entry.contour.is_inside(l) ? 1 : 0;
  }
  CHECK(inside == 8);
}

TEST_CASE("gallery registry")
{
  CHECK(gallery_entries().size() == 4);
  for (const auto &e : gallery_entries())
  {
    const auto p = make_gallery_problem(e.name);
    CHECK(p.name == e.name);
  }
  CHECK(make_gallery_problem("hadeler").n() == 200);
  CHECK(make_gallery_problem("fem").n() == 100);
  CHECK_THROWS_AS(make_gallery_problem("butterfly"), Error);
}

TEST_CASE("problem directory round trip")
{
  const auto dir = scratch_dir("delay");
  const auto p = make_delay(1.0);
  write_problem(p, dir);
  const auto q = load_problem(dir);
  CHECK(q.B0 == p.B0);
  CHECK(q.A0 == p.A0);
  CHECK(q.A[0] == p.A[0]);
  CHECK(q.f[0].descriptor() == p.f[0].descriptor());
  CHECK(q.f[0](0.7) == p.f[0](0.7));
}

TEST_CASE("hadeler is rewritten into the file vocabulary")
{
  const auto dir = scratch_dir("hadeler");
  const auto p = make_hadeler(5, 100.0);
  write_problem(p, dir);
  const auto q = load_problem(dir);
  CHECK(q.f[0].descriptor().rfind("exp(", 0) == 0);
  for (cplx z : {cplx(-30.0, 0.0), cplx(1.0, 2.0)})
  {
    CHECK(norm_max(evaluate_T(p, z) - evaluate_T(q, z)) <= 1e-12 * norm_max(evaluate_T(p, z)));
  }
}

TEST_CASE("matrix file errors")
{
  const auto dir = scratch_dir("bad");
  {
    std::ofstream(dir / "m.txt") << "2 x\n1 0\n";
  }
  try
  {
    read_matrix_file(dir / "m.txt");
    FAIL("expected ParseError");
  }
  catch (const Error &e)
  {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("m.txt") != std::string::npos);
  }
  {
    std::ofstream(dir / "short.txt") << "1 2\n1 0\n";
  }
  CHECK(kind_of([&] { read_matrix_file(dir / "short.txt"); }) == ErrorKind::ParseError);
  {
    std::ofstream(dir / "ok.txt") << "1 2\n1.5 -2\n0 1e-3\n";
  }
  const CMatrix a = read_matrix_file(dir / "ok.txt");
  CHECK(a(0, 0) == cplx(1.5, -2.0));
  CHECK(a(0, 1) == cplx(0.0, 1e-3));

  CHECK(kind_of([&] { load_problem(dir / "nowhere"); }) == ErrorKind::ParseError);
}

TEST_CASE("function descriptors")
{
  const auto f = parse_function_descriptor("poly(4)");
  CHECK(std::abs(f(cplx(1.0, 1.0)) - cplx(-4.0, 0.0)) < 1e-14);
  CHECK(std::abs(parse_function_descriptor("exp(-1)")(1.0) - std::exp(-1.0)) < 1e-15);
  const auto r = parse_function_descriptor("recip(2.5)");
  CHECK(r.poles().size() == 1);
  CHECK(kind_of([] { parse_function_descriptor("sin(1)"); }) == ErrorKind::UnknownFunctionDescriptor);
  CHECK(kind_of([] { parse_function_descriptor("poly(1.5)"); }) == ErrorKind::UnknownFunctionDescriptor);
  CHECK(kind_of([] { parse_function_descriptor("user-unsupported"); }) ==
        ErrorKind::UnknownFunctionDescriptor);
}
