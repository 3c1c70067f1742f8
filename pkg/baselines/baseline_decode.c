/* Handwritten baseline: two run-length decoders advanced in lockstep,
 * ORing their bits and counting ones. A byte b < 255 expands to b zeros
 * then a one; 255 expands to 255 zeros. */
#include <stdint.h>

struct dec {
    const int *a;
    int n;
    int idx;
    int rem;   /* zeros still to emit */
    int pend;  /* a one pending after the zeros */
};

static int next_bit(struct dec *d, int *out)
{
    for (;;) {
        if (d->rem > 0) {
            d->rem--;
            *out = 0;
            return 1;
        }
        if (d->pend) {
            d->pend = 0;
            *out = 1;
            return 1;
        }
        if (d->idx >= d->n)
            return 0;
        int b = d->a[d->idx++];
        d->rem = b;
        d->pend = b != 255;
    }
}

int64_t bench_entry(const int *a1, int n1, const int *a2, int n2)
{
    struct dec d1 = {a1, n1, 0, 0, 0};
    struct dec d2 = {a2, n2, 0, 0, 0};
    int64_t sum = 0;
    int b1, b2;
    while (next_bit(&d1, &b1) && next_bit(&d2, &b2))
        sum += (b1 | b2);
    return sum;
}
