#include <cstdio>

int main() {
    std::puts("denguecast: placeholder");
    return 0;
}
