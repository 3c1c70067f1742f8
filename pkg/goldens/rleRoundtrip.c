// pipeline: rleRoundtrip (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1)
{
  int64_t v_1 = 0;
  int v_2 = 0;
  int v_3 = 0;
  while (v_3 < n_1)
  {
    int const el_4 = a_1[v_3];
    int const t_5 = v_2;
    if (el_4 != 0)
    {
      v_2 = 0;
      int const t_6 = t_5 + (t_5 != 255 ? 1 : 0);
      int v_7 = 0;
      while (v_7 < t_6)
      {
        v_1 = v_1 + (v_7 == t_5 ? 1 : 0);
        v_7++;
      }
    }
    else
    {
      v_2 = t_5 + 1;
      if (v_2 == 255)
      {
        v_2 = 0;
        int const t_8 = 255 + (255 != 255 ? 1 : 0);
        int v_9 = 0;
        while (v_9 < t_8)
        {
          v_1 = v_1 + (v_9 == 255 ? 1 : 0);
          v_9++;
        }
      }
    }
    v_3++;
  }
  return v_1;
}
