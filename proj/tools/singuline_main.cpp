#include <cstdio>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::fprintf(stderr, "singuline: pipeline not wired yet\n");
    return 1;
}
