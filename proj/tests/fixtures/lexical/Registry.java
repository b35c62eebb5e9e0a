package golden.misc;

import java.util.Map;
import java.util.List;

public class Registry<T> {
    private final Map<String, List<T>> byName = null;
    private String banner = """
        // not a comment
        """;

    public boolean has(Object o) {
        return o instanceof String && this.byName != null;
    }

    public int scan(int[][] grid) {
        int größe = 0; /* inline */ int limit = grid.length;
        outer:
        for (int i = 0; i < limit; i++) {
            while (größe >= 0) {
                größe += i % 3;
                if (größe > 100) break outer;
                if (größe < 0) continue outer;
                break;
            }
        }
        return größe >> 2;
    }
}
