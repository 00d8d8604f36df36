#include <cstdio>
int main(){ std::puts("petals"); return 0; }
