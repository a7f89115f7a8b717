#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "kmx/suite.hpp"

namespace {

std::string run_capture(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
  if (!p) return out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p.get())) > 0) out.append(buf.data(), n);
  return out;
}

// The verify verb must print byte-identical reports on repeated runs.
kmx::CriterionResult reproducible_report() {
  kmx::CriterionResult r{10, "reproducible-verify", false, "", 0, 0};
  auto start = std::chrono::steady_clock::now();
  std::string cmd = std::string(KMX_BINARY) + " verify 2>&1";
  std::string a = run_capture(cmd), b = run_capture(cmd);
  int lines = 0;
  for (char c : a) lines += c == '\n';
  r.pass = !a.empty() && a == b && lines == kmx::kCriteria;
  r.detail = std::to_string(a.size()) + " bytes, " + std::to_string(lines) + " lines, " +
             (a == b ? "identical" : "different") + " across two runs";
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  int only = argc > 1 ? std::stoi(argv[1]) : 0;
  bool all = true;
  for (int id = 1; id <= kmx::kCriteria + 1; ++id) {
    if (only && id != only) continue;
    kmx::CriterionResult r = id <= kmx::kCriteria ? kmx::run_criterion(id) : reproducible_report();
    char secs[32];
    std::snprintf(secs, sizeof secs, " [%.2fs]", r.seconds);
    std::cout << kmx::report_line(r) << secs << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
