package q;

import p.A;

public class C extends A {
    private int hits;

    public void go() {
        hits++;
        run();
    }

    public int peek(A other) {
        return other.getCount() + other.count;
    }
}
