package golden.io;

import java.util.List;

/* Block comment: if while return new */
public class Printer {
    // for (int i = 0; i < 10; i++) {}
    public void show(List<String> items) {
        for (String s : items) {
            if (s != null && !s.isEmpty()) {
                System.out.println(s);
            } else {
                continue;
            }
        }
        System.out.printf("%d%n", items.size());
    }
}
