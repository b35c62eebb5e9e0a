package golden;

public class Account extends Base {
    private long balance;

    public Account(long start) throws IllegalStateException {
        super(start);
        balance = start > 0 ? start : 0;
    }

    public void withdraw(long amount) {
        try {
            if (amount > balance) {
                throw new IllegalStateException("insufficient");
            }
            balance -= amount;
        } catch (IllegalStateException e) {
            balance = 0;
        } finally {
            balance <<= 1;
        }
    }

    int grade(int k) {
        switch (k) {
            case 1:
                return 10;
            case 2:
                break;
            default:
                k++;
        }
        do {
            k--;
        } while (k > 0);
        return k;
    }
}
