void layer0(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 64; i++) {
        for (int j = 0; j < 160000; j++) {
            wt[i][j] = wt[i][j] * 0.5 + act[j];
        }
    }
    in[0] = mean;
}

void layer1(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer2(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer3(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 64; i++) {
        for (int j = 0; j < 160000; j++) {
            wt[i][j] = wt[i][j] * 0.5 + act[j];
        }
    }
    in[0] = mean;
}

void layer4(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer5(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer6(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 64; i++) {
        for (int j = 0; j < 160000; j++) {
            wt[i][j] = wt[i][j] * 0.5 + act[j];
        }
    }
    in[0] = mean;
}

void layer7(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer8(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer9(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 64; i++) {
        for (int j = 0; j < 160000; j++) {
            wt[i][j] = wt[i][j] * 0.5 + act[j];
        }
    }
    in[0] = mean;
}

void layer10(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer11(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}

void layer12(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 64; i++) {
        for (int j = 0; j < 160000; j++) {
            wt[i][j] = wt[i][j] * 0.5 + act[j];
        }
    }
    in[0] = mean;
}

void layer13(float in[160000], float out[64][160000], float wt[64][160000], float bias[64], float act[160000], float norm[160000]) {
    float mean = 0.0;
    for (int i = 0; i < 64; i++) {
        for (int j = 1; j < 160000; j++) {
            out[i][j] = out[i][j - 1] * 0.5 + in[j];
        }
    }
    for (int f = 0; f < 64; f++) {
        bias[f] = bias[f] * 0.5 + 0.1;
    }
    for (int i = 0; i < 160000; i++) {
        act[i] = in[i] * norm[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        mean += act[i];
    }
    for (int i = 0; i < 160000; i++) {
        norm[i] = act[i] + in[i] * 0.5 + 1.0;
    }
    for (int i = 0; i < 160000; i++) {
        in[i] = norm[i] + act[i] * 0.5 + 1.0;
    }
    in[0] = mean;
}
