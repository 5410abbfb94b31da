// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/gallery.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "ratnlevp/error.hpp"

namespace ratnlevp
{

namespace
{

CMatrix fem_stiffness(std::size_t n)
{
  CMatrix b(n, n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    b(i, i) = 2.0 * dn;
    if (i + 1 < n)
    {
      b(i, i + 1) = -dn;
      b(i + 1, i) = -dn;
    }
  }
  b(n - 1, n - 1) = dn;
  return b;
}

CMatrix fem_mass(std::size_t n)
{
  CMatrix a(n, n);
  const double c = -1.0 / (6.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
  {
    a(i, i) = 4.0 * c;
    if (i + 1 < n)
    {
      a(i, i + 1) = c;
      a(i + 1, i) = c;
    }
  }
  a(n - 1, n - 1) = 2.0 * c;
  return a;
}

CMatrix unit_corner(std::size_t n)
{
  CMatrix e(n, n);
  e(n - 1, n - 1) = 1.0;
  return e;
}

[[noreturn]] void parse_fail(const std::filesystem::path &file, std::size_t line, const std::string &msg)
{
  throw Error(ErrorKind::ParseError,
              file.string() + (line ? ":" + std::to_string(line) : std::string()) + ": " + msg);
}

double parse_double(const std::string &tok, const std::filesystem::path &file, std::size_t line)
{
  errno = 0;
  char *end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(x))
  {
    parse_fail(file, line, "bad number '" + tok + "'");
  }
  return x;
}

std::string format_double(double x)
{
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

SplitProblem make_delay(double tau)
{
  if (!(tau > 0.0))
  {
    throw Error(ErrorKind::InvalidArgument, "delay tau must be positive");
  }
  CMatrix b0 = CMatrix::from_rows({{-5.0, 1.0}, {2.0, -6.0}});
  CMatrix a1 = CMatrix::from_rows({{2.0, -1.0}, {-4.0, 1.0}});
  return make_split_problem("delay", std::move(b0), CMatrix::identity(2), {std::move(a1)},
                            {ScalarFunction::exp(-tau)});
}

SplitProblem make_fem_string(std::size_t n)
{
  if (n < 2)
  {
    throw Error(ErrorKind::InvalidArgument, "fem string needs n >= 2");
  }
  // The display reads T = B + z A + f E; the split form carries -B0, so B0 = -B.
  return make_split_problem("fem", -1.0 * fem_stiffness(n), fem_mass(n), {unit_corner(n)},
                            {ScalarFunction::recip(1.0)});
}

Pencil make_exact_fem_linearization(std::size_t n)
{
  if (n < 2)
  {
    throw Error(ErrorKind::InvalidArgument, "fem string needs n >= 2");
  }
  const CMatrix id = CMatrix::identity(n);
  Pencil p{CMatrix(2 * n, 2 * n), CMatrix(2 * n, 2 * n)};
  p.A.set_block(0, 0, id);
  p.A.set_block(0, n, -1.0 * id);
  p.A.set_block(n, 0, unit_corner(n));
  p.A.set_block(n, n, fem_stiffness(n));
  p.M.set_block(0, 0, id);
  p.M.set_block(n, n, -1.0 * fem_mass(n));
  return p;
}

SplitProblem make_hadeler(std::size_t n, double b0)
{
  if (n < 1 || !(b0 > 0.0))
  {
    throw Error(ErrorKind::InvalidArgument, "hadeler needs n >= 1 and b0 > 0");
  }
  CMatrix b1(n, n), b2(n, n);
  for (std::size_t j = 1; j <= n; ++j)
  {
    for (std::size_t k = 1; k <= n; ++k)
    {
      b1(j - 1, k - 1) = static_cast<double>((n + 1 - std::max(j, k)) * j * k);
      b2(j - 1, k - 1) = (j == k ? static_cast<double>(n) : 0.0) + 1.0 / static_cast<double>(j + k);
    }
  }
  CMatrix bb0 = CMatrix::identity(n);
  bb0 *= b0;
  return make_split_problem("hadeler", std::move(bb0), CMatrix(n, n), {std::move(b1), std::move(b2)},
                            {ScalarFunction::expm1(1.0), ScalarFunction::poly(2)});
}

SplitProblem make_quadratic_halo(std::size_t n)
{
  if (n < 2)
  {
    throw Error(ErrorKind::InvalidArgument, "quadratic example needs n >= 2");
  }
  CMatrix b0(n, n), a2(n, n);
  for (std::size_t i = 0; i < n; ++i)
  {
    b0(i, i) = -2.0;
    if (i + 1 < n)
    {
      b0(i, i + 1) = 1.0;
      b0(i + 1, i) = 1.0;
    }
  }
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      const double e1_row = i == 0 ? 1.0 : 0.0;  // eye(n,1)*ones(1,n)
      const double e1_col = j == 0 ? 1.0 : 0.0;  // ones(n,1)*eye(1,n)
      a2(i, j) = 0.5 * ((i == j ? dn : 0.0) - e1_row - e1_col);
    }
  }
  return make_split_problem("quadratic", std::move(b0), CMatrix::identity(n), {std::move(a2)},
                            {ScalarFunction::poly(2)});
}

Pencil quadratic_companion(const CMatrix &B0, const CMatrix &A0, const CMatrix &A2)
{
  const std::size_t n = B0.rows();
  Pencil p{CMatrix(2 * n, 2 * n), CMatrix(2 * n, 2 * n)};
  p.A.set_block(0, n, CMatrix::identity(n));
  p.A.set_block(n, 0, B0);
  p.A.set_block(n, n, -1.0 * A0);
  p.M.set_block(0, 0, CMatrix::identity(n));
  p.M.set_block(n, n, A2);
  return p;
}

const std::vector<GalleryEntry> &gallery_entries()
{
  static const std::vector<GalleryEntry> entries{
      {"delay", "2x2 delay system, f(z) = exp(-z)", Contour::circle({-1.0, 0.0}, 6.0), 50, 5},
      {"fem", "FEM string n=100, f(z) = 1/(1-z)", Contour::circle({150.0, 0.0}, 150.0), 6, 5},
      {"hadeler", "Hadeler n=200, b0=100, f = exp(z)-1, z^2", Contour::circle({-30.0, 0.0}, 10.0),
       50, 12},
      {"quadratic", "4x4 quadratic halo example", Contour::rectangle({-1.0, -1.5}, {0.0, 1.5}), 60,
       8},
  };
  return entries;
}

SplitProblem make_gallery_problem(const std::string &name)
{
  if (name == "delay")
  {
    return make_delay(1.0);
  }
  if (name == "fem")
  {
    return make_fem_string(100);
  }
  if (name == "hadeler")
  {
    return make_hadeler(200, 100.0);
  }
  if (name == "quadratic")
  {
    return make_quadratic_halo(4);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown gallery problem '" + name + "'");
}

ScalarFunction parse_function_descriptor(const std::string &text)
{
  static const std::regex re(R"(^\s*(poly|exp|recip)\s*\(\s*([^)\s]+)\s*\)\s*$)");
  std::smatch mt;
  if (!std::regex_match(text, mt, re))
  {
    throw Error(ErrorKind::UnknownFunctionDescriptor,
                "'" + text + "' (supported: poly(degree), exp(scale), recip(shift))");
  }
  const std::string kind = mt[1].str(), arg = mt[2].str();
  char *end = nullptr;
  const double x = std::strtod(arg.c_str(), &end);
  if (end == arg.c_str() || *end != '\0' || !std::isfinite(x))
  {
    throw Error(ErrorKind::UnknownFunctionDescriptor, "bad argument in '" + text + "'");
  }
  if (kind == "poly")
  {
    if (x < 0 || x != std::floor(x))
    {
      throw Error(ErrorKind::UnknownFunctionDescriptor, "poly degree must be a non-negative integer");
    }
    return ScalarFunction::poly(static_cast<int>(x));
  }
  if (kind == "exp")
  {
    return ScalarFunction::exp(x);
  }
  return ScalarFunction::recip(x);
}

CMatrix read_matrix_file(const std::filesystem::path &file)
{
  std::ifstream in(file);
  if (!in)
  {
    parse_fail(file, 0, "cannot open");
  }
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() {
    while (std::getline(in, line))
    {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos)
      {
        return true;
      }
    }
    return false;
  };
  if (!next_line())
  {
    parse_fail(file, lineno, "missing dimension line");
  }
  std::istringstream head(line);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(head >> rows >> cols) || (head >> extra) || rows <= 0 || cols <= 0)
  {
    parse_fail(file, lineno, "dimension line must be 'rows cols' with positive integers");
  }
  CMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long k = 0; k < rows * cols; ++k)
  {
    if (!next_line())
    {
      parse_fail(file, lineno, "expected " + std::to_string(rows * cols) + " entries, found " +
                                   std::to_string(k));
    }
    std::istringstream ls(line);
    std::string re_s, im_s;
    if (!(ls >> re_s >> im_s) || (ls >> extra))
    {
      parse_fail(file, lineno, "entry line must be 're im'");
    }
    a(static_cast<std::size_t>(k / cols), static_cast<std::size_t>(k % cols)) =
        cplx(parse_double(re_s, file, lineno), parse_double(im_s, file, lineno));
  }
  if (next_line())
  {
    parse_fail(file, lineno, "trailing data after the last entry");
  }
  return a;
}

void write_matrix_file(const CMatrix &a, const std::filesystem::path &file)
{
  std::ofstream out(file);
  if (!out)
  {
    throw Error(ErrorKind::InvalidArgument, "cannot write " + file.string());
  }
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i)
  {
    for (std::size_t j = 0; j < a.cols(); ++j)
    {
      out << format_double(a(i, j).real()) << ' ' << format_double(a(i, j).imag()) << '\n';
    }
  }
}

SplitProblem load_problem(const std::filesystem::path &dir)
{
  const auto manifest = dir / "problem.json";
  std::ifstream in(manifest);
  if (!in)
  {
    parse_fail(manifest, 0, "cannot open");
  }
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(in);
  }
  catch (const nlohmann::json::exception &e)
  {
    parse_fail(manifest, 0, e.what());
  }
  auto field = [&](const nlohmann::json &obj, const char *key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key))
    {
      parse_fail(manifest, 0, "missing field '" + path + "'");
    }
    return obj.at(key);
  };
  try
  {
    const auto n = field(j, "n", "n").get<std::size_t>();
    const auto p = field(j, "p", "p").get<std::size_t>();
    const auto terms = field(j, "terms", "terms");
    if (!terms.is_array() || terms.size() != p)
    {
      parse_fail(manifest, 0, "'terms' must be an array of length p = " + std::to_string(p));
    }
    auto load = [&](const std::string &rel, const std::string &what) {
      CMatrix a = read_matrix_file(dir / rel);
      if (a.rows() != n || a.cols() != n)
      {
        parse_fail(dir / rel, 1, what + " must be " + std::to_string(n) + "x" + std::to_string(n));
      }
      return a;
    };
    CMatrix b0 = load(field(j, "B0", "B0").get<std::string>(), "B0");
    CMatrix a0 = load(field(j, "A0", "A0").get<std::string>(), "A0");
    std::vector<CMatrix> a;
    std::vector<ScalarFunction> f;
    for (std::size_t t = 0; t < p; ++t)
    {
      const std::string path = "terms[" + std::to_string(t) + "]";
      f.push_back(parse_function_descriptor(field(terms[t], "function", path + ".function").get<std::string>()));
      a.push_back(load(field(terms[t], "matrix", path + ".matrix").get<std::string>(), path));
    }
    const std::string name = j.value("name", dir.filename().string());
    return make_split_problem(name, std::move(b0), std::move(a0), std::move(a), std::move(f));
  }
  catch (const nlohmann::json::exception &e)
  {
    parse_fail(manifest, 0, e.what());
  }
}

void write_problem(const SplitProblem &prob, const std::filesystem::path &dir)
{
  // expm1(s) is not a file descriptor: -B0 + (e^{sz} - 1) A = -(B0 + A) + e^{sz} A.
  CMatrix b0 = prob.B0;
  std::vector<std::string> desc;
  static const std::regex expm1_re(R"(^expm1\((.*)\)$)");
  for (std::size_t t = 0; t < prob.p(); ++t)
  {
    std::smatch mt;
    const std::string &d = prob.f[t].descriptor();
    if (std::regex_match(d, mt, expm1_re))
    {
      b0 += prob.A[t];
      desc.push_back("exp(" + mt[1].str() + ")");
    }
    else
    {
      desc.push_back(d);
    }
    parse_function_descriptor(desc.back());
  }
  std::filesystem::create_directories(dir);
  nlohmann::json j;
  j["name"] = prob.name;
  j["n"] = prob.n();
  j["p"] = prob.p();
  j["B0"] = "B0.txt";
  j["A0"] = "A0.txt";
  j["terms"] = nlohmann::json::array();
  write_matrix_file(b0, dir / "B0.txt");
  write_matrix_file(prob.A0, dir / "A0.txt");
  for (std::size_t t = 0; t < prob.p(); ++t)
  {
    const std::string file = "A" + std::to_string(t + 1) + ".txt";
    write_matrix_file(prob.A[t], dir / file);
    j["terms"].push_back({{"function", desc[t]}, {"matrix", file}});
  }
  std::ofstream out(dir / "problem.json");
  if (!out)
  {
    throw Error(ErrorKind::InvalidArgument, "cannot write " + (dir / "problem.json").string());
  }
  out << j.dump(2) << '\n';
}

}  // namespace ratnlevp
