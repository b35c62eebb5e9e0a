package com.demo.util;

public final class Money implements Comparable<Money> {
    public static final Money ZERO = new Money(0);
    private final long cents;

    private Money(long cents) {
        this.cents = cents;
    }

    public static Money of(double amount) {
        return new Money(Math.round(amount * 100));
    }

    public double amount() {
        return cents / 100.0;
    }

    public boolean isZero() {
        return cents == 0;
    }

    public Money plus(Money other) {
        return new Money(cents + other.cents);
    }

    @Override
    public int compareTo(Money other) {
        return Long.compare(cents, other.cents);
    }

    @Override
    public String toString() {
        return String.format("%d.%02d", cents / 100, Math.abs(cents % 100));
    }
}
