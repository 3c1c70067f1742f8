/* Handwritten baseline: first n1 products of the outer product. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1, const int *a2, int n2)
{
    int64_t sum = 0;
    int count = n1;
    for (int i = 0; i < n1 && count > 0; i++) {
        int x = a1[i];
        for (int j = 0; j < n2 && count > 0; j++) {
            sum += x * a2[j];
            count--;
        }
    }
    return sum;
}
