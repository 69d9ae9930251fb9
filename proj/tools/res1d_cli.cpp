#include <cstdio>

int main() {
  std::puts("res1d placeholder");
  return 0;
}
