/* Handwritten baseline: sum over (x_i + x_i) * y_j. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1, const int *a2, int n2)
{
    int64_t sum = 0;
    for (int i = 0; i < n1; i++) {
        int x = a1[i] + a1[i];
        for (int j = 0; j < n2; j++)
            sum += x * a2[j];
    }
    return sum;
}
