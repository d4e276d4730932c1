// Exercises the CLI's external contract through the real binary: exit codes
// (0 pass, 1 check/computation failure, 2 usage error), output artifacts, and
// config-file flag override.  Run as `cli_contract <path-to-cli>`.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int exit_code(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  if (raw == -1) return -1;
  return WEXITSTATUS(raw);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int failures = 0;

void expect(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
  if (!ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_contract <path-to-cli>\n");
    return 2;
  }
  const std::string cli = std::string("\"") + argv[1] + "\"";
  const std::string null = " > cli_contract_out.txt 2> cli_contract_err.txt";

  expect(exit_code(cli + " props --trials 20 --seed 3" + null) == 0, "props exits 0 on success");
  expect(exit_code(cli + " --help" + null) == 0, "--help exits 0");
  expect(exit_code(cli + " metric --expr \"z(1)\" --point 1,0,0 --time 0" + null) == 0,
         "metric evaluates");
  expect(slurp("cli_contract_out.txt").find("\"g_tt\":0,") != std::string::npos,
         "metric reports g_tt = 0 on the stable cylinder");

  expect(exit_code(cli + " metric --expr \"z(1\" --point 0,0,0" + null) == 2,
         "malformed expression exits 2");
  expect(exit_code(cli + " metric --expr \"u(1,1,0)(2)\" --point 0,0,0" + null) == 2,
         "non-unit axis exits 2");
  expect(exit_code(cli + " nosuchcommand" + null) == 2, "unknown subcommand exits 2");
  expect(exit_code(cli + " quantify --parity sideways" + null) == 2, "bad flag value exits 2");

  // computation failure: the cylinder has no bounded surface along z, so the
  // numeric surface sampler cannot bracket a root
  expect(exit_code(cli + " surface --expr \"z(1)\" --res-a 8 --res-b 8" + null) == 1,
         "unbracketable numeric surface exits 1");
  expect(exit_code(cli + " quantify --l 0 --parity even --k 2 --count 3 --out "
                         "/nonexistent-dir/out.json" + null) == 1,
         "unwritable output path exits 1");

  expect(exit_code(cli + " quantify --l 0 --parity even --k 2 --count 3" + null) == 0,
         "quantify runs");
  expect(slurp("cli_contract_out.txt").find("1.57079632679489") != std::string::npos,
         "quantify reports pi/2");

  // determinism across --out runs
  expect(exit_code(cli + " twosource --signs same --points 40 --out cc_a.json" + null) == 0 &&
             exit_code(cli + " twosource --signs same --points 40 --out cc_b.json" + null) == 0 &&
             slurp("cc_a.json") == slurp("cc_b.json") && !slurp("cc_a.json").empty(),
         "twosource output is byte-stable");

  // config file provides defaults, flags override
  {
    std::ofstream cfg("cc_config.json");
    cfg << "{\"k\": 2.0, \"count\": 2}";
  }
  expect(exit_code(cli + " quantify --l 0 --parity even --config cc_config.json" + null) == 0,
         "config file accepted");
  expect(slurp("cli_contract_out.txt").find("\"k\":2,") != std::string::npos,
         "config supplies the wavenumber");
  expect(exit_code(cli + " quantify --l 0 --parity even --config cc_config.json --k 4" + null) ==
             0,
         "config plus override runs");
  expect(slurp("cli_contract_out.txt").find("\"k\":4,") != std::string::npos,
         "explicit flag overrides the config value");

  // surface export round trip
  expect(exit_code(cli + " surface --omegas 1,1,1 --res-a 9 --res-b 8 --format obj --out "
                         "cc_surface.obj" + null) == 0,
         "ellipsoid OBJ export");
  const std::string obj = slurp("cc_surface.obj");
  expect(obj.rfind("v ", 0) == 0 && obj.find("\nf ") != std::string::npos,
         "OBJ contains v and f records");

  for (const char* f : {"cli_contract_out.txt", "cli_contract_err.txt", "cc_a.json", "cc_b.json",
                        "cc_config.json", "cc_surface.obj"}) {
    std::remove(f);
  }

  if (failures > 0) {
    std::printf("%d contract check(s) failed\n", failures);
    return 1;
  }
  std::printf("all CLI contract checks passed\n");
  return 0;
}
