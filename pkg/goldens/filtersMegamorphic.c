// pipeline: filtersMegamorphic (seed 1)
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
    if (el_3 > 0)
    {
      if (el_3 > 1)
      {
        if (el_3 > 2)
        {
          if (el_3 > 3)
          {
            if (el_3 > 4)
            {
              if (el_3 > 5)
              {
                if (el_3 > 6)
                {
                  v_1 = v_1 + el_3;
                }
              }
            }
          }
        }
      }
    }
    v_2++;
  }
  return v_1;
}
