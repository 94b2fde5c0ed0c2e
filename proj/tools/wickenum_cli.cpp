// placeholder until the verification drivers land
int main() { return 0; }
