void relax(float a[1000], int steps) {
    int t = 0;
    while (t < steps) {
        for (int i = 0; i < 1000; i++) {
            a[i] = a[i] * 0.5;
        }
        t = t + 1;
    }
}
