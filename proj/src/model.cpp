#include "dirac1d/model.hpp"

#include <charconv>
#include <cmath>
#include <string_view>
#include <vector>

namespace dirac1d {

PotentialSpec::PotentialSpec(double alpha1, double alpha2, double alpha3, double alpha4, double beta_sextic)
    : PotentialSpec(alpha1, alpha2, alpha3, alpha4, beta_sextic, alpha3 == 0 && alpha4 == 0) {}

PotentialSpec::PotentialSpec(double alpha1, double alpha2, double alpha3, double alpha4, double beta_sextic,
                             bool moduli_only)
    : a_{alpha1, alpha2, alpha3, alpha4}, beta_(beta_sextic), moduli_only_(moduli_only) {
  for (double c : {alpha1, alpha2, alpha3, alpha4, beta_sextic})
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "potential coefficients must be finite");
  if (moduli_only != (alpha3 == 0 && alpha4 == 0))
    throw Error(ErrorKind::InvalidArgument, "moduli_only flag disagrees with alpha3/alpha4");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_args(std::string_view body, const std::string& expr) {
  std::vector<double> out;
  while (true) {
    const auto comma = body.find(',');
    const std::string_view tok = trim(body.substr(0, comma));
    double value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value))
      throw Error(ErrorKind::InvalidArgument, "bad numeric argument in potential preset '" + expr + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

PotentialSpec PotentialSpec::from_preset(const std::string& expr) {
  const std::string_view text = trim(expr);
  const auto open = text.find('(');
  const std::string_view name = trim(text.substr(0, open));
  std::vector<double> args;
  if (open != std::string_view::npos) {
    if (text.back() != ')') throw Error(ErrorKind::InvalidArgument, "unterminated preset '" + expr + "'");
    args = parse_args(text.substr(open + 1, text.size() - open - 2), expr);
  }
  auto expect = [&](std::size_t n) {
    if (args.size() != n)
      throw Error(ErrorKind::InvalidArgument,
                  "preset '" + std::string(name) + "' takes " + std::to_string(n) + " argument(s)");
  };

  if (name == "mtm") return expect(0), mtm();
  if (name == "gross_neveu") return expect(0), gross_neveu();
  if (name == "linear") return expect(0), linear();
  if (name == "coupled_mode") return expect(1), coupled_mode(args[0]);
  if (name == "photonic") return expect(2), photonic(args[0], args[1]);
  if (name == "feshbach") return expect(1), feshbach(args[0]);
  throw Error(ErrorKind::InvalidArgument, "unknown potential preset '" + std::string(name) + "'");
}

}  // namespace dirac1d
