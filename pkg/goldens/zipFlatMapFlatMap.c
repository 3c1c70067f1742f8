// pipeline: zipFlatMapFlatMap (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1, const int * a_2, int n_2)
{
  int64_t v_1 = 0;
  int v_2 = 0;
  int v_3 = 0;
  int v_4 = 1;
  int v_5 = 0;
  int v_6 = 0;
  while ((v_3 < n_2) && (v_4 != 0))
  {
    int const el_7 = a_2[v_3];
    int v_8 = 0;
    while ((v_8 < n_1) && (v_4 != 0))
    {
      int const el_9 = a_1[v_8];
      int const t_10 = el_7 - el_9;
      v_4 = v_4 + 2;
      while ((v_4 & 2) != 0)
      {
        if (v_4 == 3)
        {
          if (v_2 < n_1)
          {
            int const el_11 = a_1[v_2];
            v_5 = el_11;
            v_6 = 0;
            v_4 = 7;
            v_2++;
          }
          else
          {
            v_4 = 0;
          }
        }
        if (v_4 == 7)
        {
          if (v_6 < n_2)
          {
            int const el_12 = a_2[v_6];
            int const t_13 = v_5 * el_12;
            v_1 = v_1 + (t_13 + t_10);
            v_4 = 5;
            v_6++;
          }
          else
          {
            v_4 = 3;
          }
        }
      }
      v_8++;
    }
    v_3++;
  }
  return v_1;
}
