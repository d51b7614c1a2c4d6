#include <iostream>

int main() {
  std::cout << "linkforge: CLI wiring pending\n";
  return 0;
}
