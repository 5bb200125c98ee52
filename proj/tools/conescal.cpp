#include <cstdio>

#include "conescal/conescal.hpp"

int main() {
  std::puts("conescal placeholder");
  return 0;
}
