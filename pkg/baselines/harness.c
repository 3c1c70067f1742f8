/* Timing harness: links one bench_entry (baseline or generated).
 *
 * Usage: harness <name> <n1> <fill1> <n2> <fill2> <iters> <warmups>
 *   fill: 0 = i mod 10, 1 = i
 * Prints one CSV line per timed iteration: name,iter,ns,checksum
 * Input allocation and filling happen before timing starts.
 */
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <time.h>

#ifndef ARITY
#define ARITY 2
#endif

#if ARITY == 1
extern int64_t bench_entry(const int *a1, int n1);
#else
extern int64_t bench_entry(const int *a1, int n1, const int *a2, int n2);
#endif

static int *make_input(int n, int fill)
{
    int *a = malloc(sizeof(int) * (n > 0 ? n : 1));
    if (!a) {
        fprintf(stderr, "alloc failed\n");
        exit(1);
    }
    for (int i = 0; i < n; i++)
        a[i] = fill ? i : i % 10;
    return a;
}

static int64_t now_ns(void)
{
    struct timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return (int64_t)ts.tv_sec * 1000000000 + ts.tv_nsec;
}

static volatile int64_t sink;

int main(int argc, char **argv)
{
    if (argc < 8) {
        fprintf(stderr,
                "usage: %s name n1 fill1 n2 fill2 iters warmups\n", argv[0]);
        return 2;
    }
    const char *name = argv[1];
    int n1 = atoi(argv[2]), fill1 = atoi(argv[3]);
    int n2 = atoi(argv[4]), fill2 = atoi(argv[5]);
    int iters = atoi(argv[6]), warmups = atoi(argv[7]);

    int *a1 = make_input(n1, fill1);
    int *a2 = make_input(n2, fill2);

    for (int w = 0; w < warmups; w++) {
#if ARITY == 1
        sink = bench_entry(a1, n1);
#else
        sink = bench_entry(a1, n1, a2, n2);
#endif
    }
    for (int it = 0; it < iters; it++) {
        int64_t t0 = now_ns();
#if ARITY == 1
        int64_t r = bench_entry(a1, n1);
#else
        int64_t r = bench_entry(a1, n1, a2, n2);
#endif
        int64_t t1 = now_ns();
        sink = r;
        printf("%s,%d,%lld,%lld\n", name, it,
               (long long)(t1 - t0), (long long)r);
    }
    free(a1);
    free(a2);
    return 0;
}
