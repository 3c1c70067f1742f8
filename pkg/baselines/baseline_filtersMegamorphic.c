/* Handwritten baseline: seven chained comparisons. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1)
{
    int64_t sum = 0;
    for (int i = 0; i < n1; i++) {
        int x = a1[i];
        if (x > 0 && x > 1 && x > 2 && x > 3 && x > 4 && x > 5 && x > 6)
            sum += x;
    }
    return sum;
}
