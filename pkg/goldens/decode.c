// pipeline: decode (seed 1)
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
  int v_6 = v_5 + (v_5 != 255 ? 1 : 0);
  int v_7 = 0;
  while ((v_3 < n_2) && (v_4 != 0))
  {
    int const el_8 = a_2[v_3];
    int const t_9 = el_8 + (el_8 != 255 ? 1 : 0);
    int v_10 = 0;
    while ((v_10 < t_9) && (v_4 != 0))
    {
      v_4 = v_4 + 2;
      while ((v_4 & 2) != 0)
      {
        if (v_4 == 3)
        {
          if (v_2 < n_1)
          {
            int const el_11 = a_1[v_2];
            v_5 = el_11;
            v_6 = v_5 + (v_5 != 255 ? 1 : 0);
            v_7 = 0;
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
          if (v_7 < v_6)
          {
            v_1 = v_1 + ((v_7 == v_5) || (v_10 == el_8) ? 1 : 0);
            v_4 = 5;
            v_7++;
          }
          else
          {
            v_4 = 3;
          }
        }
      }
      v_10++;
    }
    v_3++;
  }
  return v_1;
}
