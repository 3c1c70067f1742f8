// pipeline: mapsMegamorphic (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1)
{
  int64_t v_1 = 0;
  int v_2 = 0;
  while (v_2 < n_1)
  {
    int const el_3 = a_1[v_2];
    int const t_4 = el_3 * 1;
    int const t_5 = t_4 * 2;
    int const t_6 = t_5 * 3;
    int const t_7 = t_6 * 4;
    int const t_8 = t_7 * 5;
    int const t_9 = t_8 * 6;
    int const t_10 = t_9 * 7;
    v_1 = v_1 + t_10;
    v_2++;
  }
  return v_1;
}
