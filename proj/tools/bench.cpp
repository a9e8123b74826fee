#include <cstdio>

int main() {
  std::printf("bench: kernels not wired yet\n");
  return 0;
}
