/* Handwritten baseline: two filtered cursors advanced in lockstep. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1, const int *a2, int n2)
{
    int64_t sum = 0;
    int i1 = 0, i2 = 0;
    for (;;) {
        while (i1 < n1 && a1[i1] <= 7)
            i1++;
        while (i2 < n2 && a2[i2] <= 5)
            i2++;
        if (i1 >= n1 || i2 >= n2)
            break;
        sum += a1[i1] + a2[i2];
        i1++;
        i2++;
    }
    return sum;
}
