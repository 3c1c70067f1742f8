/* Handwritten baseline: sum of squared elements. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1)
{
    int64_t sum = 0;
    for (int i = 0; i < n1; i++) {
        int x = a1[i];
        sum += x * x;
    }
    return sum;
}
