void kernel(float x[10000000], float y[10000000], float z[10000000], float w[10000000], float m[4096][4096], float v[4096], int steps) {
    float sum = 0.0;
    for (int i = 0; i < 10000000; i++) {
        w[i] = w[i] + y[i] * 0.5 + 1.0;
    }
    w[0] = w[0] + sum;
    int t = 0;
    while (t < steps) {
        for (int i = 0; i < 1000000; i++) {
            y[i] = w[i] + z[i] * 0.5 + 1.0;
        }
        for (int i = 0; i < 1000000; i++) {
            y[i] = x[i] + y[i] * 0.5 + 1.0;
        }
        for (int i = 0; i < 1000000; i++) {
            z[i] = y[i] + x[i] * 0.5 + 1.0;
        }
        t = t + 1;
    }
    w[0] = w[0] + sum;
    for (int i = 1; i < 10000000; i++) {
        x[i] = x[i - 1] + w[i];
    }
    w[0] = w[0] + sum;
    for (int i = 0; i < 10000000; i++) {
        w[i] = y[i] + z[i] * 0.5 + 1.0;
    }
    w[0] = w[0] + sum;
    for (int i = 0; i < 10000000; i++) {
        x[i] = x[i] + w[i] * 0.5 + 1.0;
    }
    w[0] = w[0] + sum;
}
