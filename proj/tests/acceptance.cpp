#include <cstdio>

int main() {
  std::printf("acceptance: pending, suites not wired yet\n");
  return 1;
}
